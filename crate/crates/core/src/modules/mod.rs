//! Finite-dimensional left modules over a [`Qci`], given by one action matrix
//! per generator (acting on column vectors).

mod cyclic;
mod ghost;
mod homs;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, PresentationDoc, Qci};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::par;
use crate::scalars::Scalar;

pub use cyclic::{chain_composes_to_w, f_maps, periodicity_diagrams_check, right_mult_map, CyclicQuotient, FChain, PeriodicityReport};
pub use ghost::{ghost_chain_witness, syzygy_shifts, GhostReport, GhostStep};
pub use homs::{
    cosyzygy, hom_space, hom_space_direct, injective_envelope, iso_search, projective_cover, stably_zero,
    stably_zero_via_envelope, syzygy, IsoVerdict, ModulePresentation, StableHomTest,
};

struct ModuleInner {
    alg: Qci,
    dim: usize,
    actions: Vec<Matrix>,
    monomials: OnceLock<Vec<Matrix>>,
}

/// A finite-dimensional left module. Cheap to clone.
#[derive(Clone)]
pub struct FdModule(Arc<ModuleInner>);

impl fmt::Debug for FdModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FdModule").field("dim", &self.0.dim).field("algebra", &self.0.alg).finish()
    }
}

impl PartialEq for FdModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.alg == other.0.alg && self.0.dim == other.0.dim && self.0.actions == other.0.actions)
    }
}
impl Eq for FdModule {}

impl FdModule {
    /// Validates shapes and the defining relations `A_i^{a_i} = 0`,
    /// `A_i A_j = q_ij A_j A_i`.
    pub fn new(alg: &Qci, actions: Vec<Matrix>) -> Result<FdModule> {
        if actions.len() != alg.n() {
            return Err(Error::InvalidModule(format!("expected {} action matrices, got {}", alg.n(), actions.len())));
        }
        let dim = actions[0].rows();
        for a in &actions {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::InvalidModule("action matrices must be square of equal size".into()));
            }
            if a.field() != alg.field() {
                return Err(Error::FieldMismatch);
            }
        }
        let m = FdModule(Arc::new(ModuleInner { alg: alg.clone(), dim, actions, monomials: OnceLock::new() }));
        if !m.satisfies_relations() {
            return Err(Error::InvalidModule("action matrices violate the defining relations".into()));
        }
        Ok(m)
    }

    /// Internal constructor; relations are re-checked in debug builds.
    pub(crate) fn from_parts(alg: &Qci, dim: usize, actions: Vec<Matrix>) -> FdModule {
        let m = FdModule(Arc::new(ModuleInner { alg: alg.clone(), dim, actions, monomials: OnceLock::new() }));
        debug_assert!(m.satisfies_relations(), "constructed module violates relations");
        m
    }

    pub fn zero(alg: &Qci) -> FdModule {
        let z = Matrix::zeros(alg.field(), 0, 0);
        Self::from_parts(alg, 0, vec![z; alg.n()])
    }

    /// `Λ` acting on itself from the left.
    pub fn regular(alg: &Qci) -> FdModule {
        let actions = (0..alg.n()).map(|i| alg.left_mult_matrix(&alg.x(i))).collect();
        Self::from_parts(alg, alg.dim(), actions)
    }

    /// `Λ^t`, with copy `k` occupying coordinates `k·dim Λ ..`.
    pub fn free(alg: &Qci, t: usize) -> FdModule {
        let reg = Self::regular(alg);
        (0..t).fold(Self::zero(alg), |acc, _| acc.direct_sum(&reg).expect("same algebra"))
    }

    pub fn direct_sum(&self, other: &FdModule) -> Result<FdModule> {
        if self.0.alg != other.0.alg {
            return Err(Error::PresentationMismatch);
        }
        let actions = self.0.actions.iter().zip(&other.0.actions).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Self::from_parts(&self.0.alg, self.0.dim + other.0.dim, actions))
    }

    pub fn algebra(&self) -> &Qci {
        &self.0.alg
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.0.actions
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.0.actions[i]
    }

    pub fn satisfies_relations(&self) -> bool {
        let alg = &self.0.alg;
        let n = alg.n();
        let nilpotent = par::map_range(n, |i| {
            self.0.actions[i].pow(alg.exponents()[i]).map(|m| m.is_zero()).unwrap_or(false)
        });
        if !nilpotent.into_iter().all(|b| b) {
            return false;
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        par::map(&pairs, |&(i, j)| {
            let (a, b) = (&self.0.actions[i], &self.0.actions[j]);
            let lhs = a.mul(b).expect("square");
            let rhs = b.mul(a).expect("square").scale(alg.commutator(i, j));
            lhs == rhs
        })
        .into_iter()
        .all(|b| b)
    }

    /// Action matrices of all PBW monomials, indexed like the algebra basis.
    pub fn monomial_matrices(&self) -> &[Matrix] {
        self.0.monomials.get_or_init(|| {
            let alg = &self.0.alg;
            let mut out: Vec<Matrix> = Vec::with_capacity(alg.dim());
            out.push(Matrix::identity(alg.field(), self.0.dim));
            for m in 1..alg.dim() {
                let e = alg.exponents_of(m);
                let i = e.iter().position(|&x| x > 0).expect("nonzero index");
                // x^e = x_i · x^{e - ε_i} with coefficient 1, since x_i is leftmost.
                let prev = &out[m - alg.stride(i)];
                out.push(self.0.actions[i].mul(prev).expect("square"));
            }
            out
        })
    }

    /// Matrix by which an algebra element acts.
    pub fn element_matrix(&self, e: &Element) -> Matrix {
        let mons = self.monomial_matrices();
        let mut acc = Matrix::zeros(self.0.alg.field(), self.0.dim, self.0.dim);
        for (m, c) in e.terms() {
            acc = acc.add(&mons[m].scale(c)).expect("same shape");
        }
        acc
    }

    pub fn act(&self, e: &Element, v: &[Scalar]) -> Vector {
        let mons = self.monomial_matrices();
        let mut acc = vec![self.0.alg.field().zero(); self.0.dim];
        for (m, c) in e.terms() {
            let w = mons[m].mul_vec(v).expect("length");
            for (a, b) in acc.iter_mut().zip(w) {
                if !b.is_zero() {
                    *a = &*a + &(&b * c);
                }
            }
        }
        acc
    }

    /// `x^m · v` for every basis monomial `m`.
    pub fn orbit(&self, v: &[Scalar]) -> Vec<Vector> {
        self.monomial_matrices().iter().map(|m| m.mul_vec(v).expect("length")).collect()
    }

    /// `rad M = Σ x_i M`.
    pub fn radical(&self) -> Subspace {
        let cols: Vec<Vector> = self.0.actions.iter().flat_map(|a| a.columns()).collect();
        Subspace::span(self.0.alg.field(), self.0.dim, cols)
    }

    /// `soc M = {m : x_i m = 0 for all i}` as a subspace.
    pub fn socle(&self) -> Subspace {
        let rows: Vec<Vector> = self.0.actions.iter().flat_map(|a| a.row_vectors()).collect();
        let stacked = Matrix::from_rows(self.0.alg.field(), self.0.dim, rows).expect("widths agree");
        Subspace::span(self.0.alg.field(), self.0.dim, stacked.kernel_basis())
    }

    /// Standard basis positions whose unit vectors map to a basis of `M / rad M`.
    pub fn top_positions(&self) -> Vec<usize> {
        self.radical().complement_positions()
    }

    /// The submodule on an invariant subspace, with its inclusion. The
    /// submodule basis is the subspace's echelon basis.
    pub fn submodule(&self, sub: &Subspace) -> Result<(FdModule, ModuleHom)> {
        let basis = sub.basis();
        let field = self.0.alg.field();
        let mut actions = Vec::with_capacity(self.0.actions.len());
        for a in &self.0.actions {
            let mut cols = Vec::with_capacity(basis.len());
            for b in basis {
                let img = a.mul_vec(b)?;
                let coords = sub
                    .coordinates(&img)
                    .ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?;
                cols.push(coords);
            }
            actions.push(Matrix::from_columns(field, basis.len(), &cols)?);
        }
        let sm = Self::from_parts(&self.0.alg, basis.len(), actions);
        let inc = Matrix::from_columns(field, self.0.dim, basis)?;
        Ok((sm.clone(), ModuleHom::from_parts(&sm, self, inc)))
    }

    /// The quotient by an invariant subspace, with the projection. Quotient
    /// basis: classes of the unit vectors at `sub.complement_positions()`.
    pub fn quotient(&self, sub: &Subspace) -> Result<(FdModule, ModuleHom)> {
        let field = self.0.alg.field();
        let comps = sub.complement_positions();
        for b in sub.basis() {
            for a in &self.0.actions {
                if !sub.contains(&a.mul_vec(b)?) {
                    return Err(Error::InvalidModule("subspace is not a submodule".into()));
                }
            }
        }
        let actions = self
            .0
            .actions
            .iter()
            .map(|a| {
                let cols: Vec<Vector> = comps.iter().map(|&c| sub.quotient_coordinates(&a.column(c))).collect();
                Matrix::from_columns(field, comps.len(), &cols).expect("shape")
            })
            .collect();
        let q = Self::from_parts(&self.0.alg, comps.len(), actions);
        let proj_cols: Vec<Vector> = (0..self.0.dim)
            .map(|m| {
                let mut e = vec![field.zero(); self.0.dim];
                e[m] = field.one();
                sub.quotient_coordinates(&e)
            })
            .collect();
        let proj = Matrix::from_columns(field, comps.len(), &proj_cols)?;
        Ok((q.clone(), ModuleHom::from_parts(self, &q, proj)))
    }

    pub fn to_doc(&self) -> ModuleDoc {
        ModuleDoc {
            presentation: self.0.alg.to_doc(),
            dim: self.0.dim,
            actions: self
                .0
                .actions
                .iter()
                .map(|a| (0..a.rows()).map(|r| a.row(r).iter().map(|x| x.to_string()).collect()).collect())
                .collect(),
        }
    }

    pub fn from_doc(doc: &ModuleDoc) -> Result<FdModule> {
        let alg = Qci::from_doc(&doc.presentation)?;
        Self::from_doc_over(&alg, doc)
    }

    /// Reads a module document, requiring its presentation to match `alg`.
    pub fn from_doc_over(alg: &Qci, doc: &ModuleDoc) -> Result<FdModule> {
        if Qci::from_doc(&doc.presentation)? != *alg {
            return Err(Error::PresentationMismatch);
        }
        let field = alg.field();
        let mut actions = Vec::with_capacity(doc.actions.len());
        for a in &doc.actions {
            if a.len() != doc.dim {
                return Err(Error::DimensionMismatch { expected: doc.dim, found: a.len() });
            }
            let rows = a
                .iter()
                .map(|r| r.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            actions.push(Matrix::from_rows(field, doc.dim, rows)?);
        }
        if actions.len() != alg.n() {
            return Err(Error::InvalidModule(format!("expected {} action matrices, got {}", alg.n(), actions.len())));
        }
        if doc.dim == 0 {
            return Ok(Self::zero(alg));
        }
        Self::new(alg, actions)
    }
}

/// JSON form of a module: action matrices as row-major scalar strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub presentation: PresentationDoc,
    pub dim: usize,
    pub actions: Vec<Vec<Vec<String>>>,
}

/// A module homomorphism; `matrix` is `dim(target) × dim(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    source: FdModule,
    target: FdModule,
    matrix: Matrix,
}

impl ModuleHom {
    /// Checks shape and equivariance `F A_i = B_i F`.
    pub fn new(source: &FdModule, target: &FdModule, matrix: Matrix) -> Result<ModuleHom> {
        if source.algebra() != target.algebra() {
            return Err(Error::PresentationMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim() * source.dim(), found: matrix.rows() * matrix.cols() });
        }
        let h = Self::from_parts(source, target, matrix);
        if !h.is_equivariant() {
            return Err(Error::IllDefinedMap("matrix does not commute with the actions".into()));
        }
        Ok(h)
    }

    pub(crate) fn from_parts(source: &FdModule, target: &FdModule, matrix: Matrix) -> ModuleHom {
        ModuleHom { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn identity(m: &FdModule) -> ModuleHom {
        Self::from_parts(m, m, Matrix::identity(m.algebra().field(), m.dim()))
    }

    pub fn zero(source: &FdModule, target: &FdModule) -> ModuleHom {
        Self::from_parts(source, target, Matrix::zeros(source.algebra().field(), target.dim(), source.dim()))
    }

    pub fn source(&self) -> &FdModule {
        &self.source
    }

    pub fn target(&self) -> &FdModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_equivariant(&self) -> bool {
        self.source.actions().iter().zip(self.target.actions()).all(|(a, b)| {
            self.matrix.mul(a).expect("shape") == b.mul(&self.matrix).expect("shape")
        })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleHom) -> Result<ModuleHom> {
        if first.target != self.source {
            return Err(Error::PresentationMismatch);
        }
        Ok(Self::from_parts(&first.source, &self.target, self.matrix.mul(&first.matrix)?))
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        Ok(Self::from_parts(&self.source, &self.target, self.matrix.add(&other.matrix)?))
    }

    pub fn scale(&self, s: &Scalar) -> ModuleHom {
        Self::from_parts(&self.source, &self.target, self.matrix.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v).expect("length")
    }

    /// Image as a subspace of the target.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.target.algebra().field(), self.target.dim(), self.matrix.columns())
    }

    /// Kernel as a subspace of the source.
    pub fn kernel(&self) -> Subspace {
        Subspace::span(self.source.algebra().field(), self.source.dim(), self.matrix.kernel_basis())
    }
}

/// Random element of a spanning list of homomorphisms, coefficients in `[-bound, bound]`.
pub fn random_combination<R: Rng + ?Sized>(homs: &[ModuleHom], rng: &mut R, bound: i64) -> Option<ModuleHom> {
    let first = homs.first()?;
    let field = first.source().algebra().field().clone();
    let mut acc = ModuleHom::zero(first.source(), first.target());
    for h in homs {
        acc = acc.add(&h.scale(&field.sample(rng, bound))).ok()?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    fn lam(n: usize, a: u32) -> Qci {
        let p = if a == 2 { 5 } else { 7 };
        Qci::homogeneous(&Field::prime(p).unwrap(), n, a).unwrap()
    }

    #[test]
    fn regular_module_shapes() {
        let l1 = lam(1, 2);
        let r = FdModule::regular(&l1);
        assert_eq!(r.dim(), 2);
        assert_eq!(r.action(0), &Matrix::from_i64(l1.field(), &[&[0, 0], &[1, 0]]));
        let l2 = lam(2, 2);
        let r2 = FdModule::regular(&l2);
        assert_eq!(r2.dim(), 4);
        assert!(r2.satisfies_relations());
    }

    #[test]
    fn relation_violations_are_rejected() {
        let l2 = lam(2, 2);
        let f = l2.field();
        // x1, x2 acting by commuting nilpotents violates x1x2 = -x2x1 unless products vanish
        let a = Matrix::from_i64(f, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert!(FdModule::new(&l2, vec![a.clone(), a]).is_err());
    }

    #[test]
    fn element_matrix_matches_left_multiplication() {
        let l = lam(2, 3);
        let r = FdModule::regular(&l);
        let e = &(&l.x(0) * &l.x(1)) + &l.x(1).scale(&l.field().from_i64(3));
        assert_eq!(r.element_matrix(&e), l.left_mult_matrix(&e));
    }

    #[test]
    fn socle_and_radical_of_regular() {
        let l = lam(2, 3);
        let r = FdModule::regular(&l);
        assert_eq!(r.socle().dim(), 1);
        assert_eq!(r.radical().dim(), l.dim() - 1);
        assert_eq!(r.top_positions(), vec![0]);
    }

    #[test]
    fn doc_round_trip() {
        let l = lam(2, 2);
        let r = FdModule::regular(&l);
        let json = serde_json::to_string(&r.to_doc()).unwrap();
        let back = FdModule::from_doc(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
