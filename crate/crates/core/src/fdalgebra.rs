//! Finite-dimensional associative algebras by structure constants, with the
//! trace-form radical, primitive idempotents and global dimension via minimal
//! projective resolutions of the simple modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::par;
use crate::scalars::{Field, Scalar};

/// Above this dimension associativity is checked on sampled triples only.
pub const EXHAUSTIVE_CHECK_DIM: usize = 64;

/// An algebra with basis `b_0..b_{d-1}` and `b_i b_j = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    field: Field,
    dim: usize,
    structure: Vec<Vec<Vector>>,
    unit: Vector,
    idempotent_hints: Option<Vec<Vector>>,
}

/// Global or projective dimension: exact, or bounded below when a
/// resolution did not stop within the step budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum Dimension {
    Exact(usize),
    AtLeast(usize),
}

impl Dimension {
    pub fn value(&self) -> usize {
        match *self {
            Dimension::Exact(v) | Dimension::AtLeast(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Dimension::Exact(_))
    }

    fn max(self, other: Dimension) -> Dimension {
        match (self, other) {
            (Dimension::AtLeast(a), Dimension::AtLeast(b)) => Dimension::AtLeast(a.max(b)),
            (Dimension::AtLeast(a), Dimension::Exact(b)) | (Dimension::Exact(b), Dimension::AtLeast(a)) => {
                Dimension::AtLeast(a.max(b))
            }
            (Dimension::Exact(a), Dimension::Exact(b)) => Dimension::Exact(a.max(b)),
        }
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Exact(v) => write!(f, "{v}"),
            Dimension::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalDimension {
    pub value: Dimension,
    /// Projective dimension of the simple top of `A e_i`, per primitive idempotent.
    pub projective_dimensions: Vec<Dimension>,
    pub radical_dim: usize,
    pub simples_one_dimensional: bool,
}

fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

impl FdAlgebra {
    /// Builds the algebra, locating the unit and checking associativity.
    pub fn new(field: &Field, structure: Vec<Vec<Vector>>) -> Result<FdAlgebra> {
        let dim = structure.len();
        if structure.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimensionMismatch { expected: dim, found: structure.iter().map(Vec::len).max().unwrap_or(0) });
        }
        let mut alg = FdAlgebra { field: field.clone(), dim, structure, unit: Vec::new(), idempotent_hints: None };
        alg.unit = alg.find_unit().ok_or(Error::NonUnitalInput)?;
        if !alg.is_associative() {
            return Err(Error::Config("structure constants are not associative".into()));
        }
        Ok(alg)
    }

    /// `k` with its single basis vector the unit.
    pub fn ground_field(field: &Field) -> FdAlgebra {
        Self::new(field, vec![vec![vec![field.one()]]]).expect("k is an algebra")
    }

    /// `k^m` with orthogonal idempotent basis.
    pub fn diagonal(field: &Field, m: usize) -> FdAlgebra {
        let structure = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut v = vec![field.zero(); m];
                        if i == j {
                            v[i] = field.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(field, structure).expect("k^m is an algebra")
    }

    /// `k[x]/(x^a)` on the basis `1, x, ..., x^{a-1}`.
    pub fn truncated_polynomial(field: &Field, a: usize) -> FdAlgebra {
        let structure = (0..a)
            .map(|i| {
                (0..a)
                    .map(|j| {
                        let mut v = vec![field.zero(); a];
                        if i + j < a {
                            v[i + j] = field.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(field, structure).expect("truncated polynomial ring")
    }

    /// `M_n(k)` on matrix units `E_{rc}` ordered row-major.
    pub fn matrix_algebra(field: &Field, n: usize) -> FdAlgebra {
        let d = n * n;
        let structure = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![field.zero(); d];
                        let (r1, c1) = (i / n, i % n);
                        let (r2, c2) = (j / n, j % n);
                        if c1 == r2 {
                            v[r1 * n + c2] = field.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(field, structure).expect("matrix algebra")
    }

    /// Records candidate primitive orthogonal idempotents, used by
    /// [`FdAlgebra::global_dimension`] after verification.
    pub fn with_idempotent_hints(mut self, hints: Vec<Vector>) -> FdAlgebra {
        self.idempotent_hints = Some(hints);
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &Vector {
        &self.structure[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut acc = self.zero_vector();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                axpy(&mut acc, &(ai * bj), &self.structure[i][j]);
            }
        }
        acc
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(&self.field, self.dim, &cols).expect("square")
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Matrix::from_columns(&self.field, self.dim, &cols).expect("square")
    }

    fn find_unit(&self) -> Option<Vector> {
        if self.dim == 0 {
            return None;
        }
        // Σ_i u_i c[i][j] = e_j and Σ_i u_i c[j][i] = e_j for all j.
        let d = self.dim;
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                rows.push((0..d).map(|i| self.structure[i][j][k].clone()).collect::<Vector>());
                rhs.push(if j == k { self.field.one() } else { self.field.zero() });
                rows.push((0..d).map(|i| self.structure[j][i][k].clone()).collect::<Vector>());
                rhs.push(if j == k { self.field.one() } else { self.field.zero() });
            }
        }
        Matrix::from_rows(&self.field, d, rows).ok()?.solve(&rhs).ok()?
    }

    fn assoc_triple(&self, i: usize, j: usize, k: usize) -> bool {
        let bk = self.basis_vector(k);
        let bi = self.basis_vector(i);
        self.mul(&self.structure[i][j], &bk) == self.mul(&bi, &self.structure[j][k])
    }

    /// Exhaustive for `dim ≤ 64`, otherwise on 512 seeded random triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        let triples: Vec<(usize, usize, usize)> = if d <= EXHAUSTIVE_CHECK_DIM {
            (0..d).flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k)))).collect()
        } else {
            use rand::Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            (0..512).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))).collect()
        };
        par::map(&triples, |&(i, j, k)| self.assoc_triple(i, j, k)).into_iter().all(|b| b)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.structure[i][j] == self.structure[j][i]))
    }

    fn require_char_zero(&self) -> Result<()> {
        match self.field.characteristic() {
            0 => Ok(()),
            p => Err(Error::PositiveCharacteristic(p)),
        }
    }

    /// Jacobson radical as the kernel of the trace form `(x, y) ↦ tr L_{xy}`;
    /// valid in characteristic 0.
    pub fn radical(&self) -> Result<Subspace> {
        self.require_char_zero()?;
        let d = self.dim;
        let traces: Vector = (0..d)
            .map(|k| (0..d).fold(self.field.zero(), |acc, j| &acc + &self.structure[k][j][j]))
            .collect();
        let rows: Vec<Vector> = par::map_range(d, |i| {
            (0..d)
                .map(|j| {
                    self.structure[i][j]
                        .iter()
                        .zip(&traces)
                        .fold(self.field.zero(), |acc, (c, t)| if c.is_zero() || t.is_zero() { acc } else { &acc + &(c * t) })
                })
                .collect()
        });
        let form = Matrix::from_rows(&self.field, d, rows)?;
        Ok(Subspace::span(&self.field, d, form.kernel_basis()))
    }

    /// `A / rad A` on the classes of the unit vectors at the complement positions.
    fn semisimple_quotient(&self, rad: &Subspace) -> Result<FdAlgebra> {
        let comps = rad.complement_positions();
        let structure = comps
            .iter()
            .map(|&i| comps.iter().map(|&j| rad.quotient_coordinates(&self.structure[i][j])).collect())
            .collect();
        FdAlgebra::new(&self.field, structure)
    }

    /// `dim eAe - dim e(rad A)e`, which is 1 for a primitive idempotent with
    /// split simple top.
    fn corner_top_dim(&self, e: &[Scalar], rad: &Subspace) -> usize {
        let corner = |v: &Vector| self.mul(&self.mul(e, v), e);
        let full: Vec<Vector> = (0..self.dim).map(|i| corner(&self.basis_vector(i))).collect();
        let radc: Vec<Vector> = rad.basis().iter().map(corner).collect();
        Subspace::span(&self.field, self.dim, full).dim() - Subspace::span(&self.field, self.dim, radc).dim()
    }

    fn hints_valid(&self, hints: &[Vector], rad: &Subspace) -> bool {
        let mut sum = self.zero_vector();
        for (i, e) in hints.iter().enumerate() {
            for (j, f) in hints.iter().enumerate() {
                let p = self.mul(e, f);
                let expected = if i == j { e.clone() } else { self.zero_vector() };
                if p != expected {
                    return false;
                }
            }
            for (a, b) in sum.iter_mut().zip(e) {
                *a = &*a + b;
            }
        }
        sum == self.unit && hints.iter().all(|e| self.corner_top_dim(e, rad) == 1)
    }

    /// Complete set of primitive orthogonal idempotents: verified hints, or a
    /// splitting of the commutative quotient lifted by `e ← 3e² − 2e³`.
    pub fn primitive_idempotents(&self) -> Result<Vec<Vector>> {
        let rad = self.radical()?;
        self.idempotents_with(&rad)
    }

    fn idempotents_with(&self, rad: &Subspace) -> Result<Vec<Vector>> {
        if let Some(h) = &self.idempotent_hints {
            if self.hints_valid(h, rad) {
                return Ok(h.clone());
            }
            return Err(Error::IdempotentSplitting("supplied idempotents are not primitive, orthogonal and complete".into()));
        }
        let quotient = self.semisimple_quotient(rad)?;
        if !quotient.is_commutative() {
            return Err(Error::IdempotentSplitting("the semisimple quotient is not commutative".into()));
        }
        let small = quotient.split_commutative()?;
        let comps = rad.complement_positions();
        let lift = |v: &Vector| -> Vector {
            let mut out = self.zero_vector();
            for (c, x) in comps.iter().zip(v) {
                out[*c] = x.clone();
            }
            out
        };
        let mut out: Vec<Vector> = Vec::new();
        let mut rest = self.unit.clone();
        let m = small.len();
        for (idx, e) in small.iter().enumerate() {
            if idx + 1 == m {
                out.push(rest.clone());
                break;
            }
            let x = lift(e);
            let x = self.mul(&self.mul(&rest, &x), &rest);
            let f = self.newton_idempotent(x);
            for (a, b) in rest.iter_mut().zip(&f) {
                *a = &*a - b;
            }
            out.push(f);
        }
        out.sort_by_key(|e| e.iter().position(|x| !x.is_zero()));
        Ok(out)
    }

    fn newton_idempotent(&self, mut e: Vector) -> Vector {
        let two = self.field.from_i64(2);
        let three = self.field.from_i64(3);
        loop {
            let e2 = self.mul(&e, &e);
            if e2 == e {
                return e;
            }
            let e3 = self.mul(&e2, &e);
            e = e2.iter().zip(&e3).map(|(a, b)| &(&three * a) - &(&two * b)).collect();
        }
    }

    /// Idempotents of a commutative semisimple algebra that is split, via a
    /// generic element whose minimal polynomial has distinct rational roots.
    fn split_commutative(&self) -> Result<Vec<Vector>> {
        let d = self.dim;
        if d == 1 {
            return Ok(vec![self.unit.clone()]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..32 {
            use rand::Rng;
            let z: Vector = (0..d).map(|_| self.field.from_i64(rng.gen_range(-9..=9))).collect();
            let Some(roots) = self.minimal_polynomial_roots(&z) else { continue };
            if roots.len() != d {
                continue;
            }
            // Lagrange idempotents e_i = ∏_{j≠i} (z − r_j)/(r_i − r_j).
            let mut out = Vec::with_capacity(d);
            for (i, ri) in roots.iter().enumerate() {
                let mut e = self.unit.clone();
                for (j, rj) in roots.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let mut shifted = z.clone();
                    for (s, u) in shifted.iter_mut().zip(&self.unit) {
                        *s = &*s - &(rj * u);
                    }
                    let inv = (ri - rj).inv().expect("distinct roots");
                    e = self.mul(&e, &shifted).iter().map(|x| x * &inv).collect();
                }
                out.push(e);
            }
            return Ok(out);
        }
        Err(Error::IdempotentSplitting("no generic element with rational eigenvalues found".into()))
    }

    /// Rational roots of the minimal polynomial of `z` if it has rational
    /// coefficients; `None` otherwise.
    fn minimal_polynomial_roots(&self, z: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut powers = vec![self.unit.clone()];
        let coeffs = loop {
            let next = self.mul(powers.last().unwrap(), z);
            let m = Matrix::from_columns(&self.field, self.dim, &powers).ok()?;
            if let Some(sol) = m.solve(&next).ok()? {
                break sol;
            }
            powers.push(next);
        };
        // z^k = Σ c_i z^i, so the monic polynomial is x^k − Σ c_i x^i.
        let mut poly: Vec<BigRational> = Vec::with_capacity(coeffs.len() + 1);
        for c in &coeffs {
            poly.push(-as_rational(c)?);
        }
        poly.push(BigRational::one());
        let roots = rational_roots(&poly);
        let total: usize = roots.len();
        if total != coeffs.len() {
            return None;
        }
        roots.into_iter().map(|r| self.field.from_ratio(r.numer().to_i64()?, r.denom().to_i64()?)).collect::<Option<Vec<_>>>()
    }

    /// Global dimension via minimal resolutions of the simple modules.
    pub fn global_dimension(&self, max_steps: usize) -> Result<GlobalDimension> {
        let rad = self.radical()?;
        let simples_one_dimensional = self.simples_split(&rad)?;
        if rad.dim() == 0 {
            let m = self.idempotents_with(&rad).map(|v| v.len()).unwrap_or(1);
            return Ok(GlobalDimension {
                value: Dimension::Exact(0),
                projective_dimensions: vec![Dimension::Exact(0); m],
                radical_dim: 0,
                simples_one_dimensional,
            });
        }
        let idems = self.idempotents_with(&rad)?;
        let resolver = Resolver::new(self, &rad, &idems);
        let pds: Vec<Dimension> = par::map_range(idems.len(), |i| resolver.projective_dimension_of_simple(i, max_steps));
        let value = pds.iter().copied().fold(Dimension::Exact(0), Dimension::max);
        Ok(GlobalDimension { value, projective_dimensions: pds, radical_dim: rad.dim(), simples_one_dimensional })
    }

    /// Whether every simple module is one-dimensional: `A/rad A` is commutative
    /// and split.
    pub fn simples_one_dimensional(&self) -> Result<bool> {
        let rad = self.radical()?;
        self.simples_split(&rad)
    }

    fn simples_split(&self, rad: &Subspace) -> Result<bool> {
        let quotient = self.semisimple_quotient(rad)?;
        if !quotient.is_commutative() {
            return Ok(false);
        }
        match self.idempotents_with(rad) {
            Ok(idems) => Ok(idems.len() == quotient.dim()),
            Err(Error::IdempotentSplitting(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

fn as_rational(s: &Scalar) -> Option<BigRational> {
    match s {
        Scalar::Mod { .. } => None,
        Scalar::Cyclo(c) => {
            let cs = c.coefficients();
            if cs.iter().skip(1).any(|x| !x.is_zero()) {
                return None;
            }
            Some(cs.first().cloned().unwrap_or_else(BigRational::zero))
        }
    }
}

fn eval(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let Some(v) = n.to_u64() else { return Vec::new() };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= v && d <= 1_000_000 {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d != v / d {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    out
}

/// Distinct rational roots of a polynomial with rational coefficients
/// (low to high), by the rational root theorem. Every root is simple
/// whenever the count equals the degree.
fn rational_roots(poly: &[BigRational]) -> Vec<BigRational> {
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let mut start = 0;
    while start < ints.len() && ints[start].is_zero() {
        start += 1;
    }
    if start > 0 {
        roots.push(BigRational::zero());
    }
    let (Some(a0), Some(an)) = (ints.get(start), ints.last()) else { return roots };
    for p in divisors(a0) {
        for q in divisors(an) {
            for sign in [1, -1] {
                let r = BigRational::new(BigInt::from(sign) * p.clone(), q.clone());
                if !roots.contains(&r) && eval(poly, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Minimal projective resolutions over `A`, with modules realized as
/// subspaces of `A^g` closed under left multiplication.
struct Resolver<'a> {
    alg: &'a FdAlgebra,
    rad_basis: Vec<Vector>,
    idems: &'a [Vector],
    /// Echelon basis of `A e_i`.
    projectives: Vec<Vec<Vector>>,
}

impl<'a> Resolver<'a> {
    fn new(alg: &'a FdAlgebra, rad: &Subspace, idems: &'a [Vector]) -> Resolver<'a> {
        let projectives = idems
            .iter()
            .map(|e| {
                let vs: Vec<Vector> = (0..alg.dim).map(|i| alg.mul(&alg.basis_vector(i), e)).collect();
                Subspace::span(&alg.field, alg.dim, vs).basis().to_vec()
            })
            .collect();
        Resolver { alg, rad_basis: rad.basis().to_vec(), idems, projectives }
    }

    /// `a·v` for `v ∈ A^g`, blockwise.
    fn act(&self, a: &[Scalar], v: &[Scalar]) -> Vector {
        v.chunks(self.alg.dim).flat_map(|c| self.alg.mul(a, c)).collect()
    }

    fn projective_dimension_of_simple(&self, i: usize, max_steps: usize) -> Dimension {
        let alg = self.alg;
        let e = &self.idems[i];
        // Ω(S_i) = rad(A) e_i inside one copy of A.
        let first: Vec<Vector> = self.rad_basis.iter().map(|r| alg.mul(r, e)).collect();
        let mut omega = Subspace::span(&alg.field, alg.dim, first);
        for step in 1..=max_steps {
            if omega.dim() == 0 {
                return Dimension::Exact(step - 1);
            }
            omega = self.next_syzygy(&omega);
        }
        if omega.dim() == 0 {
            Dimension::Exact(max_steps)
        } else {
            Dimension::AtLeast(max_steps)
        }
    }

    /// Kernel of the projective cover of a submodule `K ⊆ A^g`.
    fn next_syzygy(&self, k: &Subspace) -> Subspace {
        let alg = self.alg;
        let field = &alg.field;
        let amb = k.ambient_dim();
        let rad_k: Vec<Vector> =
            self.rad_basis.iter().flat_map(|r| k.basis().iter().map(move |v| (r, v))).map(|(r, v)| self.act(r, v)).collect();
        let mut span = Subspace::span(field, amb, rad_k);
        let mut gens: Vec<(usize, Vector)> = Vec::new();
        for (i, e) in self.idems.iter().enumerate() {
            for v in k.basis() {
                let ev = self.act(e, v);
                if !span.contains(&ev) {
                    span = span.sum(&Subspace::span(field, amb, vec![ev.clone()]));
                    gens.push((i, ev));
                }
            }
        }
        // Cover ⊕_g A e_{i(g)} → K, p ↦ p·g; domain coordinates are the
        // echelon bases of the A e_i.
        let mut cols: Vec<Vector> = Vec::new();
        let mut owners: Vec<(usize, usize)> = Vec::new();
        for (g, (i, v)) in gens.iter().enumerate() {
            for (idx, p) in self.projectives[*i].iter().enumerate() {
                cols.push(self.act(p, v));
                owners.push((g, idx));
            }
        }
        let map = Matrix::from_columns(field, amb, &cols).expect("lengths");
        let d = alg.dim;
        let new_amb = gens.len() * d;
        let kernel: Vec<Vector> = map
            .kernel_basis()
            .into_iter()
            .map(|c| {
                let mut out = vec![field.zero(); new_amb];
                for (coef, &(g, idx)) in c.iter().zip(&owners) {
                    if coef.is_zero() {
                        continue;
                    }
                    let p = &self.projectives[gens[g].0][idx];
                    axpy(&mut out[g * d..(g + 1) * d], coef, p);
                }
                out
            })
            .collect();
        Subspace::span(field, new_amb, kernel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::cyclotomic(2).unwrap()
    }

    #[test]
    fn ground_field_has_gldim_zero() {
        let k = FdAlgebra::ground_field(&q());
        let g = k.global_dimension(4).unwrap();
        assert_eq!(g.value, Dimension::Exact(0));
        assert!(g.simples_one_dimensional);
    }

    #[test]
    fn dual_numbers_have_infinite_gldim() {
        let a = FdAlgebra::truncated_polynomial(&q(), 2);
        assert_eq!(a.radical().unwrap().dim(), 1);
        assert_eq!(a.global_dimension(6).unwrap().value, Dimension::AtLeast(6));
    }

    #[test]
    fn diagonal_and_matrix_algebras() {
        let f = q();
        assert!(FdAlgebra::diagonal(&f, 3).simples_one_dimensional().unwrap());
        let m2 = FdAlgebra::matrix_algebra(&f, 2);
        assert_eq!(m2.radical().unwrap().dim(), 0);
        assert!(!m2.simples_one_dimensional().unwrap());
    }

    #[test]
    fn positive_characteristic_is_refused() {
        let f = Field::prime(5).unwrap();
        let a = FdAlgebra::truncated_polynomial(&f, 2);
        assert_eq!(a.radical().err(), Some(Error::PositiveCharacteristic(5)));
        assert_eq!(a.global_dimension(3).err(), Some(Error::PositiveCharacteristic(5)));
    }

    #[test]
    fn non_unital_is_rejected() {
        let f = q();
        let zero = vec![vec![vec![f.zero()]]];
        assert_eq!(FdAlgebra::new(&f, zero).err(), Some(Error::NonUnitalInput));
    }

    #[test]
    fn upper_triangular_is_hereditary() {
        // basis e11, e12, e22 of 2x2 upper triangular matrices
        let f = q();
        let idx = |r: usize, c: usize| match (r, c) {
            (0, 0) => 0,
            (0, 1) => 1,
            _ => 2,
        };
        let units = [(0, 0), (0, 1), (1, 1)];
        let structure = units
            .iter()
            .map(|&(r1, c1)| {
                units
                    .iter()
                    .map(|&(r2, c2)| {
                        let mut v = vec![f.zero(); 3];
                        if c1 == r2 {
                            v[idx(r1, c2)] = f.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let a = FdAlgebra::new(&f, structure).unwrap();
        let g = a.global_dimension(5).unwrap();
        assert_eq!(g.value, Dimension::Exact(1));
        assert!(g.simples_one_dimensional);
    }

    #[test]
    fn rational_roots_of_split_polynomial() {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        // (x - 1)(x + 2)(x - 3) = x^3 - 2x^2 - 5x + 6
        let roots = rational_roots(&[r(6), r(-5), r(-2), r(1)]);
        assert_eq!(roots, vec![r(-2), r(1), r(3)]);
    }
}
