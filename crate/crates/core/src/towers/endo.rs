//! Endomorphism algebras as structure-constant algebras, the comparison
//! `Γ ≅ Γ₁ ⊗^g Γ₂`, and the upper-bound report.

use serde::Serialize;

use super::{Generator, GradedModule};
use crate::algebra::twist_factor;
use crate::error::{Error, Result};
use crate::fdalgebra::{Dimension, FdAlgebra};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::modules::{hom_space, FdModule, ModuleHom};
use crate::par;
use crate::scalars::{Field, Scalar};

/// Full End algebras above this dimension are counted but not resolved.
pub const FULL_END_MAX_DIM: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EndKind {
    /// All endomorphisms.
    Full,
    /// Degree-0 endomorphisms of a graded module.
    Graded,
}

/// `End(M)` with product `b_i · b_j = b_i ∘ b_j`. The basis is the reduced
/// echelon basis of each homogeneous piece, so the coordinates of an
/// endomorphism are its entries at the pivot positions.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: FdAlgebra,
    pub basis: Vec<ModuleHom>,
    /// Degree of each basis map, when the module is graded.
    pub degrees: Option<Vec<Vec<i64>>>,
    pub kind: EndKind,
    pivots: Vec<usize>,
}

impl EndAlgebra {
    fn build(m: &FdModule, kind: EndKind, groups: Pieces) -> Result<EndAlgebra> {
        if m.is_zero() {
            return Err(Error::ZeroModule);
        }
        let field = m.algebra().field().clone();
        let d = m.dim();
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        let mut degrees = Vec::new();
        let graded = groups.iter().all(|(deg, _)| deg.is_some());
        for (deg, homs) in groups {
            let flat: Vec<Vector> = homs.iter().map(|h| h.matrix().entries().to_vec()).collect();
            let span = Subspace::span(&field, d * d, flat);
            for (v, &p) in span.basis().iter().zip(span.pivots()) {
                let rows: Vec<Vector> = v.chunks(d).map(<[Scalar]>::to_vec).collect();
                basis.push(ModuleHom::from_parts(m, m, Matrix::from_rows(&field, d, rows)?));
                pivots.push(p);
                degrees.push(deg.clone().unwrap_or_default());
            }
        }
        let structure: Vec<Vec<Vector>> = par::map_range(basis.len(), |i| {
            basis
                .iter()
                .map(|bj| {
                    let prod = basis[i].matrix().mul(bj.matrix()).expect("square");
                    pivots.iter().map(|&p| prod.entries()[p].clone()).collect()
                })
                .collect()
        });
        let algebra = FdAlgebra::new(&field, structure)?;
        Ok(EndAlgebra { algebra, basis, degrees: graded.then_some(degrees), kind, pivots })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an endomorphism, if it lies in the span of the basis.
    pub fn coordinates(&self, h: &ModuleHom) -> Option<Vector> {
        let coords: Vector = self.pivots.iter().map(|&p| h.matrix().entries()[p].clone()).collect();
        let field = self.algebra.field();
        let dim = h.matrix().rows();
        let mut acc = Matrix::zeros(field, dim, dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.matrix().scale(c)).ok()?;
            }
        }
        (&acc == h.matrix()).then_some(coords)
    }

    /// Uses the given idempotent endomorphisms as the primitive idempotents.
    pub fn with_idempotents(mut self, projections: &[ModuleHom]) -> Result<EndAlgebra> {
        let hints = projections
            .iter()
            .map(|p| self.coordinates(p).ok_or_else(|| Error::IdempotentSplitting("projection outside End".into())))
            .collect::<Result<Vec<_>>>()?;
        self.algebra = self.algebra.with_idempotent_hints(hints);
        Ok(self)
    }
}

/// `End(M)` of an ungraded module, on the echelon basis of `Hom(M, M)`.
pub fn endomorphism_algebra(m: &FdModule) -> Result<EndAlgebra> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    EndAlgebra::build(m, EndKind::Full, vec![(None, hom_space(m, m)?)])
}

/// Full End on a homogeneous basis, or the degree-0 part.
pub fn graded_endomorphism_algebra(m: &GradedModule, kind: EndKind) -> Result<EndAlgebra> {
    if m.module().is_zero() {
        return Err(Error::ZeroModule);
    }
    let groups = homogeneous_pieces(m, kind)?;
    EndAlgebra::build(m.module(), kind, groups)
}

/// Homogeneous Hom pieces, keyed by degree shift (`None` when ungraded).
type Pieces = Vec<(Option<Vec<i64>>, Vec<ModuleHom>)>;

fn homogeneous_pieces(m: &GradedModule, kind: EndKind) -> Result<Pieces> {
    let shifts = match kind {
        EndKind::Full => m.degree_shifts(m),
        EndKind::Graded => vec![vec![0; m.algebra().n()]],
    };
    let pieces = par::map(&shifts, |d| m.hom_space_of_degree(m, d).map(|h| (Some(d.clone()), h)));
    let pieces = pieces.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(pieces.into_iter().filter(|(_, h)| !h.is_empty()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorEndReport {
    pub dims: (usize, usize, usize),
    /// Every `Φ_{φ,ψ}` is an endomorphism and together they form a basis.
    pub spans: bool,
    /// `Φ_{φ₁,φ₂} Φ_{ψ₁,ψ₂} = g(|φ₁|, |ψ₂|) Φ_{φ₁ψ₁, φ₂ψ₂}` on all basis pairs.
    pub products_match: bool,
}

/// Compares `End(M₁ ⊗^g M₂)` with the twisted tensor product of the two End
/// algebras under `Φ_{φ,ψ}(m₁ ⊗ m₂) = g(|φ|, |m₂|) φm₁ ⊗ ψm₂`.
pub fn verify_end_tensor(
    e1: &EndAlgebra,
    e2: &EndAlgebra,
    big: &EndAlgebra,
    m2: &GradedModule,
    q_col: &[Scalar],
) -> Result<TensorEndReport> {
    let (Some(deg1), Some(deg2)) = (&e1.degrees, &e2.degrees) else {
        return Err(Error::Config("both End algebras must carry degrees".into()));
    };
    let field = big.algebra.field().clone();
    let target = big.basis.first().ok_or(Error::ZeroModule)?.source().clone();
    let d2m = m2.dim();
    let (n1, n2) = (e1.dim(), e2.dim());
    let phi = |i: usize, l: usize| -> Result<Option<Vector>> {
        let mut m = e1.basis[i].matrix().kron(e2.basis[l].matrix());
        for c in 0..m.cols() {
            let g = twist_factor(q_col, &deg1[i], m2.degrees()[c % d2m][0]);
            if g.is_one() {
                continue;
            }
            for r in 0..m.rows() {
                if !m.get(r, c).is_zero() {
                    let v = m.get(r, c) * &g;
                    m.set(r, c, v);
                }
            }
        }
        let h = match ModuleHom::new(&target, &target, m) {
            Ok(h) => h,
            Err(Error::IllDefinedMap(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(big.coordinates(&h))
    };
    let pairs: Vec<(usize, usize)> = (0..n1).flat_map(|i| (0..n2).map(move |l| (i, l))).collect();
    let cols = par::map(&pairs, |&(i, l)| phi(i, l)).into_iter().collect::<Result<Vec<_>>>()?;
    let dims = (n1, n2, big.dim());
    let Some(cols) = cols.into_iter().collect::<Option<Vec<Vector>>>() else {
        return Ok(TensorEndReport { dims, spans: false, products_match: false });
    };
    let t = Matrix::from_columns(&field, big.dim(), &cols)?;
    let spans = n1 * n2 == big.dim() && t.rank() == big.dim();
    if !spans {
        return Ok(TensorEndReport { dims, spans, products_match: false });
    }
    let all: Vec<((usize, usize), (usize, usize))> = pairs.iter().flat_map(|&x| pairs.iter().map(move |&y| (x, y))).collect();
    let products_match = par::map(&all, |&((i, l), (k, m))| {
        let lhs = big.algebra.mul(&cols[i * n2 + l], &cols[k * n2 + m]);
        let g = twist_factor(q_col, &deg1[i], deg2[m][0]);
        let c1 = e1.algebra.structure_constant(i, k);
        let c2 = e2.algebra.structure_constant(l, m);
        let mut rhs = vec![field.zero(); big.dim()];
        for (p, a) in c1.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (r, b) in c2.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let s = &(a * b) * &g;
                for (x, y) in rhs.iter_mut().zip(&cols[p * n2 + r]) {
                    if !y.is_zero() {
                        *x = &*x + &(&s * y);
                    }
                }
            }
        }
        lhs == rhs
    })
    .into_iter()
    .all(|b| b);
    Ok(TensorEndReport { dims, spans, products_match })
}

/// Summary of the upper-bound check for `Λ_n^a` with the iterated generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperReport {
    pub n: usize,
    pub a: u32,
    pub field: String,
    #[serde(rename = "dim_M")]
    pub dim_m: usize,
    #[serde(rename = "dim_End")]
    pub dim_end: usize,
    pub graded: bool,
    pub simples_one_dimensional: bool,
    pub gldim: Dimension,
    pub bound_2n: usize,
    pub satisfied: bool,
    pub regular_summand_splits: bool,
    #[serde(rename = "dim_End_full")]
    pub dim_end_full: usize,
    /// `None` when the full End exceeds the size limit.
    pub gldim_full: Option<Dimension>,
    pub full_exceeds_graded: Option<bool>,
}

pub fn upper_bound_report(field: &Field, n: usize, a: u32, full_max_dim: usize) -> Result<UpperReport> {
    if field.characteristic() != 0 {
        return Err(Error::PositiveCharacteristic(field.characteristic()));
    }
    let gen = Generator::homogeneous(field, n, a)?;
    let projections = gen.summand_projections();
    let max_steps = 2 * n + 4;
    let graded = graded_endomorphism_algebra(gen.graded(), EndKind::Graded)?.with_idempotents(&projections)?;
    let gl = graded.algebra.global_dimension(max_steps)?;
    let full_pieces = homogeneous_pieces(gen.graded(), EndKind::Full)?;
    let dim_end_full: usize = full_pieces.iter().map(|(_, h)| h.len()).sum();
    let gldim_full = if dim_end_full <= full_max_dim {
        let full = EndAlgebra::build(gen.module(), EndKind::Full, full_pieces)?.with_idempotents(&projections)?;
        Some(full.algebra.global_dimension(max_steps)?.value)
    } else {
        None
    };
    let bound_2n = 2 * n;
    let satisfied = gl.simples_one_dimensional && gl.value.is_exact() && gl.value.value() <= bound_2n;
    Ok(UpperReport {
        n,
        a,
        field: field.spec().to_string(),
        dim_m: gen.dim(),
        dim_end: graded.dim(),
        graded: true,
        simples_one_dimensional: gl.simples_one_dimensional,
        gldim: gl.value,
        bound_2n,
        satisfied,
        regular_summand_splits: gen.splits(),
        dim_end_full,
        gldim_full,
        full_exceeds_graded: gldim_full.map(|f| f > gl.value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Qci;

    fn q(a: u32) -> Field {
        Field::cyclotomic(a).unwrap()
    }

    #[test]
    fn end_of_regular_is_opposite() {
        let f = q(2);
        let l = Qci::homogeneous(&f, 2, 2).unwrap();
        let e = endomorphism_algebra(&FdModule::regular(&l)).unwrap();
        assert_eq!(e.dim(), 4);
        // φ ↦ φ(1) sends composition to the opposite product.
        let val = |h: &ModuleHom| l.from_dense(&h.matrix().column(0));
        for i in 0..4 {
            for j in 0..4 {
                let prod = e.basis[i].compose(&e.basis[j]).unwrap();
                assert_eq!(val(&prod), &val(&e.basis[j]) * &val(&e.basis[i]));
            }
        }
    }

    #[test]
    fn n1_generator_end_dims_and_gldim() {
        let f = q(2);
        let g = Generator::auslander_n1(&f, 2).unwrap();
        let full = graded_endomorphism_algebra(g.graded(), EndKind::Full).unwrap();
        assert_eq!(full.dim(), 5);
        let graded = graded_endomorphism_algebra(g.graded(), EndKind::Graded).unwrap();
        assert_eq!(graded.dim(), 3);
        let full = full.with_idempotents(&g.summand_projections()).unwrap();
        assert_eq!(full.algebra.global_dimension(6).unwrap().value, Dimension::Exact(2));
        // Without hints the generic splitting path must agree.
        let plain = endomorphism_algebra(g.module()).unwrap();
        assert_eq!(plain.algebra.global_dimension(6).unwrap().value, Dimension::Exact(2));
    }

    #[test]
    fn zero_module_refused() {
        let f = q(2);
        let l = Qci::homogeneous(&f, 1, 2).unwrap();
        assert_eq!(endomorphism_algebra(&FdModule::zero(&l)).err(), Some(Error::ZeroModule));
    }

    #[test]
    fn tensor_end_n2() {
        let f = q(2);
        let g1 = Generator::auslander_n1(&f, 2).unwrap();
        let qq = f.primitive_root_of_unity(2).unwrap();
        let g = Generator::tensor(&g1, &g1, std::slice::from_ref(&qq)).unwrap();
        for kind in [EndKind::Graded, EndKind::Full] {
            let e1 = graded_endomorphism_algebra(g1.graded(), kind).unwrap();
            let big = graded_endomorphism_algebra(g.graded(), kind).unwrap();
            let r = verify_end_tensor(&e1, &e1, &big, g1.graded(), std::slice::from_ref(&qq)).unwrap();
            assert!(r.spans && r.products_match, "{kind:?} {r:?}");
        }
    }

    #[test]
    fn upper_report_n1() {
        let r = upper_bound_report(&q(2), 1, 2, FULL_END_MAX_DIM).unwrap();
        assert!(r.satisfied);
        assert_eq!(r.gldim_full, Some(Dimension::Exact(2)));
    }
}
