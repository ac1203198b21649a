//! The element `w_α`, membership in `σΛ + Λσ` and its tilde variant, the
//! λ-coefficient certificate, and sampling of the generic-rank open sets.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{nr_decompose, symmetric_insertion, Element, Qci};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::modules::FdModule;
use crate::par;
use crate::scalars::{Field, Scalar};

/// Coefficient bound used when sampling tuples over a cyclotomic field.
pub const SAMPLE_BOUND: i64 = 3;

pub fn sample_tuple<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Vec<Scalar> {
    (0..n).map(|_| field.sample(rng, SAMPLE_BOUND)).collect()
}

pub fn tuple_strings(alpha: &[Scalar]) -> Vec<String> {
    alpha.iter().map(|s| s.to_string()).collect()
}

fn homogeneous_exponent(alg: &Qci) -> Result<u32> {
    let a = alg.exponents()[0];
    if alg.exponents().iter().any(|&e| e != a) {
        return Err(Error::Config("a homogeneous presentation is required".into()));
    }
    Ok(a)
}

/// `S(p) = Σ_{i=0}^{a-2} σ^i x_p σ^{a-2-i}` for 0-based generator `p`.
pub fn sigma_sum(alg: &Qci, sigma: &Element, p: usize) -> Result<Element> {
    let a = homogeneous_exponent(alg)?;
    Ok(symmetric_insertion(sigma, &alg.x(p), a - 2))
}

/// `w_α = x_{n-1} S(n) x_{n-3} S(n-2) ... x_3 S(4) x_2`; for `n = 2` this is `x_2`.
pub fn build_w(alg: &Qci, alpha: &[Scalar]) -> Result<Element> {
    let n = alg.n();
    if n % 2 == 1 {
        return Err(Error::OddCodimension(n));
    }
    let sigma = alg.sigma(alpha)?;
    let mut w = alg.one();
    for k in (2..=n / 2).rev() {
        // 1-based factors x_{2k-1} and S(2k)
        w = &(&w * &alg.x(2 * k - 2)) * &sigma_sum(alg, &sigma, 2 * k - 1)?;
    }
    w = &w * &alg.x(1);
    debug_assert!(w.is_zero() || w.homogeneous_degree() == Ok(Some(w_degree(alg))));
    Ok(w)
}

/// `(n/2 - 1)·a + 1`.
pub fn w_degree(alg: &Qci) -> u32 {
    (alg.n() as u32 / 2 - 1) * alg.exponents()[0] + 1
}

/// Outcome of a membership test for `w ∈ σ_αΛ + Λσ_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub alpha: Vec<String>,
    pub member: bool,
    /// Coefficient of `λ` in `N_{x_1}(w_α)`; absent when undefined (`n < 4` or `α_1 = 0`).
    pub lambda_coefficient: Option<String>,
    pub degree: u32,
    pub matrix_dims: (usize, usize),
}

/// Columns `σ·m` and `m·σ` for `m` of degree `d - 1`, restricted to degree `d`.
fn two_sided_matrix(alg: &Qci, sigma: &Element, d: u32) -> (Matrix, Vec<usize>) {
    let rows = alg.graded_component_basis(d);
    let lower = if d == 0 { Vec::new() } else { alg.graded_component_basis(d - 1) };
    let mut cols = Vec::with_capacity(2 * lower.len());
    for &m in &lower {
        cols.push(sigma.mul_basis_right(m));
        cols.push(sigma.mul_basis_left(m));
    }
    let restrict = |e: &Element| -> Vector { rows.iter().map(|&r| e.coefficient(r)).collect() };
    let cols: Vec<Vector> = cols.iter().map(restrict).collect();
    (Matrix::from_columns(alg.field(), rows.len(), &cols).expect("shape"), rows)
}

/// Membership of a homogeneous `w` in `σ_αΛ + Λσ_α`, tested in the single
/// degree of `w` (valid because `σ_α` is homogeneous of degree 1).
pub fn membership_two_sided(alg: &Qci, alpha: &[Scalar], w: &Element) -> Result<MembershipReport> {
    let sigma = alg.sigma(alpha)?;
    let lambda_coefficient = lambda_coefficient_certificate(alg, alpha).ok().map(|c| c.to_string());
    let Some(d) = w.homogeneous_degree()? else {
        return Ok(MembershipReport {
            alpha: tuple_strings(alpha),
            member: true,
            lambda_coefficient,
            degree: 0,
            matrix_dims: (0, 0),
        });
    };
    let (mat, rows) = two_sided_matrix(alg, &sigma, d);
    let target: Vector = rows.iter().map(|&r| w.coefficient(r)).collect();
    let member = mat.in_column_space(&target)?;
    Ok(MembershipReport {
        alpha: tuple_strings(alpha),
        member,
        lambda_coefficient,
        degree: d,
        matrix_dims: (mat.rows(), mat.cols()),
    })
}

/// Membership in `σ_αΛ + Λσ_α` using all `2·dim Λ` products, no grading used.
pub fn membership_full(alg: &Qci, alpha: &[Scalar], w: &Element) -> Result<bool> {
    let sigma = alg.sigma(alpha)?;
    let mut cols: Vec<Vector> = Vec::with_capacity(2 * alg.dim());
    for m in 0..alg.dim() {
        cols.push(sigma.mul_basis_right(m).to_dense());
        cols.push(sigma.mul_basis_left(m).to_dense());
    }
    Matrix::from_columns(alg.field(), alg.dim(), &cols)?.in_column_space(&w.to_dense())
}

/// Index of `λ = x_2 x_3^{a-1} x_4 x_5^{a-1} ... x_{n-1}^{a-1} x_n`.
pub fn lambda_monomial(alg: &Qci) -> Option<usize> {
    let a = alg.exponents()[0];
    let exps: Vec<u32> = (1..=alg.n())
        .map(|i| match i {
            1 => 0,
            2 => 1,
            _ if i % 2 == 1 => a - 1,
            _ => 1,
        })
        .collect();
    alg.monomial_index(&exps)
}

/// Coefficient of `λ` in `N_{x_1}(w_α)`.
pub fn lambda_coefficient_certificate(alg: &Qci, alpha: &[Scalar]) -> Result<Scalar> {
    let n = alg.n();
    if n % 2 == 1 {
        return Err(Error::OddCodimension(n));
    }
    if n < 4 {
        return Err(Error::Config("the λ-coefficient needs n >= 4".into()));
    }
    homogeneous_exponent(alg)?;
    if alpha.first().is_none_or(Scalar::is_zero) {
        return Err(Error::ZeroLeadingCoordinate);
    }
    let w = build_w(alg, alpha)?;
    let (n_part, _) = nr_decompose(&w, alpha)?;
    let lam = lambda_monomial(alg).expect("exponents are in range");
    Ok(n_part.coefficient(lam))
}

/// The subalgebra on generators `x_2..x_n` of an even-codimension `Λ`.
pub fn tilde_algebra(alg: &Qci) -> Result<Qci> {
    let n = alg.n();
    if n % 2 == 1 {
        return Err(Error::OddCodimension(n));
    }
    alg.sub_presentation(&(1..n).collect::<Vec<_>>())
}

/// `w̃`: the word of `w` without its trailing `x_2`, in the tilde algebra,
/// built from `σ̃`. Generator `x_j` of `Λ` is generator `j - 1` of `Λ̃`.
pub fn build_w_tilde(tilde: &Qci, alpha_tilde: &[Scalar]) -> Result<Element> {
    let sigma = tilde.sigma(alpha_tilde)?;
    let big_n = tilde.n() + 1;
    let mut w = tilde.one();
    for k in (2..=big_n / 2).rev() {
        w = &(&w * &tilde.x(2 * k - 3)) * &sigma_sum(tilde, &sigma, 2 * k - 2)?;
    }
    Ok(w)
}

/// Whether `w̃ ∉ σ̃Λ̃ + Λ̃σ̃^{a-1}` for the tilde algebra of `alg`.
pub fn tilde_membership(alg: &Qci, alpha_tilde: &[Scalar]) -> Result<bool> {
    let tilde = tilde_algebra(alg)?;
    let a = homogeneous_exponent(alg)?;
    let w = build_w_tilde(&tilde, alpha_tilde)?;
    let Some(d) = w.homogeneous_degree()? else { return Ok(false) };
    let sigma = tilde.sigma(alpha_tilde)?;
    let sigma_pow = sigma.power(a - 1);
    let rows = tilde.graded_component_basis(d);
    let mut cols: Vec<Element> = Vec::new();
    if d >= 1 {
        cols.extend(tilde.graded_component_basis(d - 1).into_iter().map(|m| sigma.mul_basis_right(m)));
    }
    if d >= a - 1 {
        cols.extend(tilde.graded_component_basis(d - (a - 1)).into_iter().map(|m| sigma_pow.mul_basis_left(m)));
    }
    let cols: Vec<Vector> = cols.iter().map(|e| rows.iter().map(|&r| e.coefficient(r)).collect()).collect();
    let target: Vector = rows.iter().map(|&r| w.coefficient(r)).collect();
    let mat = Matrix::from_columns(tilde.field(), rows.len(), &cols)?;
    Ok(!mat.in_column_space(&target)?)
}

/// The algebra map `Λ̃ → Λ` sending `x_2 ↦ x_1 + x_2` and `x_j ↦ x_j` for `j ≥ 3`.
pub fn substitute(alg: &Qci, tilde: &Qci, e: &Element) -> Element {
    let images: Vec<Element> = (0..tilde.n())
        .map(|j| if j == 0 { &alg.x(0) + &alg.x(1) } else { alg.x(j + 1) })
        .collect();
    let mut out = alg.zero();
    for (m, c) in e.terms() {
        let exps = tilde.exponents_of(m);
        let mut t = alg.scalar(c.clone());
        for (j, &k) in exps.iter().enumerate() {
            t = &t * &images[j].power(k);
        }
        out = &out + &t;
    }
    out
}

/// Checks `f(w̃)·x_2 = w_α` for `α = (α̃_2, α̃_2, α̃_3, ...)`, and that
/// membership of `w̃` forces membership of `w_α`.
pub fn substitution_consistency(alg: &Qci, alpha_tilde: &[Scalar]) -> Result<bool> {
    let tilde = tilde_algebra(alg)?;
    let mut alpha = vec![alpha_tilde[0].clone()];
    alpha.extend_from_slice(alpha_tilde);
    let w = build_w(alg, &alpha)?;
    let wt = build_w_tilde(&tilde, alpha_tilde)?;
    if &substitute(alg, &tilde, &wt) * &alg.x(1) != w {
        return Ok(false);
    }
    let outside_tilde = tilde_membership(alg, alpha_tilde)?;
    Ok(outside_tilde || membership_two_sided(alg, &alpha, &w)?.member)
}

/// `σΛ + Λσ^{a-1}x_2 ⊆ σΛ + Λσ` in total degree `d`.
pub fn lincomb_containment(alg: &Qci, alpha: &[Scalar], d: u32) -> Result<bool> {
    let a = homogeneous_exponent(alg)?;
    let sigma = alg.sigma(alpha)?;
    let rows = alg.graded_component_basis(d);
    let restrict = |e: &Element| -> Vector { rows.iter().map(|&r| e.coefficient(r)).collect() };
    let (big, _) = two_sided_matrix(alg, &sigma, d);
    let big = Subspace::span(alg.field(), rows.len(), big.columns());
    let tail = &sigma.power(a - 1) * &alg.x(1);
    let mut small: Vec<Vector> = Vec::new();
    if d >= 1 {
        small.extend(alg.graded_component_basis(d - 1).into_iter().map(|m| restrict(&sigma.mul_basis_right(m))));
    }
    if d >= a {
        small.extend(alg.graded_component_basis(d - a).into_iter().map(|m| restrict(&tail.mul_basis_left(m))));
    }
    Ok(big.contains_subspace(&Subspace::span(alg.field(), rows.len(), small)))
}

/// `σ_α^a = 0`.
pub fn sigma_power_vanishes(alg: &Qci, alpha: &[Scalar]) -> Result<bool> {
    let a = homogeneous_exponent(alg)?;
    Ok(alg.sigma(alpha)?.power(a).is_zero())
}

/// `Σ_{j=0}^{a-1} σ^j x_i σ^{a-1-j} = 0` for the 0-based generator `i`.
pub fn symmetric_sum_vanishes(alg: &Qci, alpha: &[Scalar], i: usize) -> Result<bool> {
    let a = homogeneous_exponent(alg)?;
    let sigma = alg.sigma(alpha)?;
    Ok(symmetric_insertion(&sigma, &alg.x(i), a - 1).is_zero())
}

/// One sampled tuple with its ranks on `M` and open-set flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub alpha: Vec<String>,
    pub rank_sigma: usize,
    pub rank_sigma_pow: usize,
    pub in_u1: bool,
    pub in_u2: bool,
    /// `w_α ∉ σΛ + Λσ`; only defined for even codimension.
    pub in_v: Option<bool>,
    /// Both kernel implications, checked on rank-maximal tuples only.
    pub implications_hold: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenSetSample {
    pub samples: Vec<SampleRecord>,
    pub generic_rank_sigma: usize,
    pub generic_rank_sigma_pow: usize,
    pub implication_failures: usize,
}

impl OpenSetSample {
    pub fn density(&self, pick: impl Fn(&SampleRecord) -> bool) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().filter(|s| pick(s)).count() as f64 / self.samples.len() as f64
    }
}

/// First implication: `σ_α m = 0 ⇒ σ_β m ∈ σ_α M` for `m` in a kernel basis.
/// Second: `σ_α^{a-1} m = 0 ⇒ (Σ_i σ_α^i σ_β σ_α^{a-2-i}) m ∈ σ_α^{a-1} M`.
fn implications_hold(m: &FdModule, a: u32, s: &Matrix, s_pow: &Matrix, alpha: &[Scalar], beta: &[Scalar]) -> Result<(bool, bool)> {
    let alg = m.algebra();
    let field = alg.field();
    let sa = alg.sigma(alpha)?;
    let sb = alg.sigma(beta)?;
    let sb_m = m.element_matrix(&sb);
    let im1 = Subspace::span(field, m.dim(), s.columns());
    let first = s.kernel_basis().iter().all(|v| im1.contains(&sb_m.mul_vec(v).expect("length")));
    let mixed = symmetric_insertion(&sa, &sb, a - 2);
    let mixed_m = m.element_matrix(&mixed);
    let im2 = Subspace::span(field, m.dim(), s_pow.columns());
    let second = s_pow.kernel_basis().iter().all(|v| im2.contains(&mixed_m.mul_vec(v).expect("length")));
    Ok((first, second))
}

/// Samples `trials` tuples, records the ranks of `σ_α` and `σ_α^{a-1}` on `M`,
/// flags rank-maximal tuples and checks both kernel implications on them
/// against one sampled `β` per tuple.
pub fn sample_open_sets<R: Rng + ?Sized>(alg: &Qci, m: &FdModule, trials: usize, rng: &mut R) -> Result<OpenSetSample> {
    if m.algebra() != alg {
        return Err(Error::InvalidModule("module lives over a different presentation".into()));
    }
    let a = homogeneous_exponent(alg)?;
    let field = alg.field();
    let draws: Vec<(Vec<Scalar>, Vec<Scalar>)> =
        (0..trials).map(|_| (sample_tuple(field, alg.n(), rng), sample_tuple(field, alg.n(), rng))).collect();
    let even = alg.n().is_multiple_of(2);
    struct Row {
        s: Matrix,
        s_pow: Matrix,
        r1: usize,
        r2: usize,
        in_v: Option<bool>,
    }
    let rows: Vec<Result<Row>> = par::map(&draws, |(alpha, _)| {
        let sigma = alg.sigma(alpha)?;
        let s = m.element_matrix(&sigma);
        let s_pow = m.element_matrix(&sigma.power(a - 1));
        let in_v = if even {
            let w = build_w(alg, alpha)?;
            Some(!membership_two_sided(alg, alpha, &w)?.member)
        } else {
            None
        };
        Ok(Row { r1: s.rank(), r2: s_pow.rank(), s, s_pow, in_v })
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let g1 = rows.iter().map(|r| r.r1).max().unwrap_or(0);
    let g2 = rows.iter().map(|r| r.r2).max().unwrap_or(0);
    let idx: Vec<usize> = (0..rows.len()).collect();
    let samples: Vec<Result<SampleRecord>> = par::map(&idx, |&k| {
        let (alpha, beta) = &draws[k];
        let r = &rows[k];
        let (in_u1, in_u2) = (r.r1 == g1, r.r2 == g2);
        let implications = if in_u1 || in_u2 {
            let (first, second) = implications_hold(m, a, &r.s, &r.s_pow, alpha, beta)?;
            Some((!in_u1 || first) && (!in_u2 || second))
        } else {
            None
        };
        Ok(SampleRecord {
            alpha: tuple_strings(alpha),
            rank_sigma: r.r1,
            rank_sigma_pow: r.r2,
            in_u1,
            in_u2,
            in_v: r.in_v,
            implications_hold: implications,
        })
    });
    let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
    let implication_failures = samples.iter().filter(|s| s.implications_hold == Some(false)).count();
    Ok(OpenSetSample { samples, generic_rank_sigma: g1, generic_rank_sigma_pow: g2, implication_failures })
}
