//! Shared helpers for the integration tests, including a product oracle that
//! multiplies by rewriting words in the free algebra.

#![allow(dead_code)]

use qci::{Element, FdModule, Field, Matrix, Qci, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Expands a PBW exponent vector into the word `x_1^{e_1} ... x_n^{e_n}`.
pub fn word_of(exps: &[u32]) -> Vec<usize> {
    exps.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
}

/// Normal form of a word: sorts adjacent inversions with `x_j x_i = q_ij^{-1} x_i x_j`
/// (`i < j`) and kills any power `x_i^{a_i}`. Returns `None` for zero.
pub fn rewrite(alg: &Qci, word: &[usize]) -> Option<(Vec<u32>, Scalar)> {
    let mut w = word.to_vec();
    let mut coeff = alg.field().one();
    while let Some(pos) = w.windows(2).position(|p| p[0] > p[1]) {
        let (j, i) = (w[pos], w[pos + 1]);
        coeff = &coeff * &alg.commutator(i, j).inv().expect("nonzero");
        w.swap(pos, pos + 1);
    }
    let mut exps = vec![0u32; alg.n()];
    for &g in &w {
        exps[g] += 1;
    }
    if exps.iter().zip(alg.exponents()).any(|(e, a)| e >= a) {
        return None;
    }
    Some((exps, coeff))
}

/// Product of two basis monomials through the rewriting oracle.
pub fn oracle_monomial_product(alg: &Qci, l: usize, r: usize) -> Option<(usize, Scalar)> {
    let mut w = word_of(&alg.exponents_of(l));
    w.extend(word_of(&alg.exponents_of(r)));
    rewrite(alg, &w).map(|(e, c)| (alg.monomial_index(&e).expect("in range"), c))
}

/// Product of two elements through the rewriting oracle.
pub fn oracle_mul(x: &Element, y: &Element) -> Element {
    let alg = x.algebra();
    let mut out = alg.zero();
    for (l, a) in x.terms() {
        for (r, b) in y.terms() {
            if let Some((idx, c)) = oracle_monomial_product(alg, l, r) {
                out = &out + &alg.term(idx, &(a * b) * &c);
            }
        }
    }
    out
}

pub fn random_element<R: Rng>(alg: &Qci, rng: &mut R, terms: usize) -> Element {
    let mut e = alg.zero();
    for _ in 0..terms {
        let m = rng.gen_range(0..alg.dim());
        e = &e + &alg.term(m, alg.field().sample(rng, 3));
    }
    e
}

pub fn simple_module(alg: &Qci) -> FdModule {
    FdModule::new(alg, vec![Matrix::zeros(alg.field(), 1, 1); alg.n()]).unwrap()
}

/// Random tuple with at least one nonzero coordinate.
pub fn nonzero_tuple<R: Rng>(field: &Field, n: usize, rng: &mut R) -> Vec<Scalar> {
    loop {
        let t: Vec<Scalar> = (0..n).map(|_| field.sample(rng, 3)).collect();
        if t.iter().any(|x| !x.is_zero()) {
            return t;
        }
    }
}

pub fn leading_nonzero_tuple<R: Rng>(field: &Field, n: usize, rng: &mut R) -> Vec<Scalar> {
    loop {
        let t: Vec<Scalar> = (0..n).map(|_| field.sample(rng, 3)).collect();
        if !t[0].is_zero() {
            return t;
        }
    }
}

/// Homogeneous presentations used throughout: (field, n, a).
pub fn standard_fields(a: u32) -> Vec<Field> {
    let p = if a == 2 { 5 } else { 7 };
    vec![Field::prime(p).unwrap(), Field::cyclotomic(a).unwrap()]
}

/// Every nondecreasing exponent tuple with entries >= 2 and product <= `bound`.
pub fn exponent_tuples(bound: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, min: u32, prod: usize, bound: usize, out: &mut Vec<Vec<u32>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        let mut a = min;
        while prod * a as usize <= bound {
            prefix.push(a);
            go(prefix, a, prod * a as usize, bound, out);
            prefix.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 2, 1, bound, &mut out);
    out
}

/// A presentation with the given exponents and seeded random nonzero commutators.
pub fn random_presentation<R: Rng>(field: &Field, exps: &[u32], rng: &mut R) -> Qci {
    let n = exps.len();
    let comms = (0..n * (n - 1) / 2).map(|_| field.sample_nonzero(rng, 3)).collect();
    Qci::new(field, exps.to_vec(), comms).unwrap()
}
