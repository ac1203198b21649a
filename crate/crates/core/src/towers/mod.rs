//! Subalgebra towers, restriction and freeness, graded modules, the
//! Auslander-style generator and its twisted tensor powers.

mod endo;

use serde::Serialize;

use crate::algebra::{twist_factor, twisted_tensor, Element, Qci};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::modules::{FdModule, ModuleHom};
use crate::scalars::{Field, Scalar};

pub use endo::{
    endomorphism_algebra, graded_endomorphism_algebra, upper_bound_report, verify_end_tensor, EndAlgebra, EndKind,
    TensorEndReport, UpperReport, FULL_END_MAX_DIM,
};

/// The subalgebra generated by some of the generators, with its inclusion and
/// the retraction killing the complementary generators.
#[derive(Clone, Debug)]
pub struct SubalgebraInclusion {
    ambient: Qci,
    indices: Vec<usize>,
    sub: Qci,
}

impl SubalgebraInclusion {
    /// `indices` are 0-based and strictly increasing.
    pub fn new(ambient: &Qci, indices: &[usize]) -> Result<SubalgebraInclusion> {
        let sub = ambient.sub_presentation(indices)?;
        Ok(SubalgebraInclusion { ambient: ambient.clone(), indices: indices.to_vec(), sub })
    }

    pub fn ambient(&self) -> &Qci {
        &self.ambient
    }

    pub fn subalgebra(&self) -> &Qci {
        &self.sub
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    fn include_index(&self, m: usize) -> usize {
        let e = self.sub.exponents_of(m);
        let mut full = vec![0; self.ambient.n()];
        for (&i, x) in self.indices.iter().zip(e) {
            full[i] = x;
        }
        self.ambient.monomial_index(&full).expect("exponents in range")
    }

    pub fn include(&self, e: &Element) -> Element {
        let mut out = self.ambient.zero();
        for (m, c) in e.terms() {
            out = &out + &self.ambient.term(self.include_index(m), c.clone());
        }
        out
    }

    /// Drops every monomial involving a generator outside the index set.
    pub fn retract(&self, e: &Element) -> Element {
        let mut out = self.sub.zero();
        for (m, c) in e.terms() {
            let full = self.ambient.exponents_of(m);
            if full.iter().enumerate().any(|(i, &x)| x > 0 && !self.indices.contains(&i)) {
                continue;
            }
            let part: Vec<u32> = self.indices.iter().map(|&i| full[i]).collect();
            out = &out + &self.sub.term(self.sub.monomial_index(&part).expect("in range"), c.clone());
        }
        out
    }

    /// `retract ∘ include = id` on the subalgebra basis.
    pub fn retraction_is_left_inverse(&self) -> bool {
        (0..self.sub.dim()).all(|m| {
            let b = self.sub.basis_element(m);
            self.retract(&self.include(&b)) == b
        })
    }

    /// `include` is multiplicative on all pairs of basis monomials.
    pub fn inclusion_is_multiplicative(&self) -> bool {
        let d = self.sub.dim();
        (0..d).all(|l| {
            (0..d).all(|r| {
                let prod = &self.sub.basis_element(l) * &self.sub.basis_element(r);
                self.include(&prod) == &self.include(&self.sub.basis_element(l)) * &self.include(&self.sub.basis_element(r))
            })
        })
    }
}

/// Forgets the actions of the generators outside the subalgebra.
pub fn restrict(m: &FdModule, inc: &SubalgebraInclusion) -> Result<FdModule> {
    if m.algebra() != inc.ambient() {
        return Err(Error::PresentationMismatch);
    }
    let actions = inc.indices().iter().map(|&i| m.action(i).clone()).collect();
    FdModule::new(inc.subalgebra(), actions)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub smaller: Vec<usize>,
    pub larger: Vec<usize>,
    /// The added generator (0-based).
    pub added: usize,
    /// Number of free generators `1, x_t, ..., x_t^{a_t - 1}`.
    pub rank: usize,
    pub assembled_rank: usize,
    pub free: bool,
}

/// Checks that `Λ_larger = ⊕_{j < a_t} Λ_smaller · x_t^j` as left
/// `Λ_smaller`-modules, by the rank of the assembled multiplication matrix.
pub fn verify_freeness(ambient: &Qci, smaller: &[usize], larger: &[usize]) -> Result<FreenessReport> {
    let big = SubalgebraInclusion::new(ambient, larger)?;
    SubalgebraInclusion::new(ambient, smaller)?;
    let added: Vec<usize> = larger.iter().copied().filter(|i| !smaller.contains(i)).collect();
    if larger.len() != smaller.len() + 1 || added.len() != 1 || smaller.iter().any(|i| !larger.contains(i)) {
        return Err(Error::InvalidChainStep(format!("{smaller:?} is not {larger:?} minus one index")));
    }
    let t = added[0];
    let lam = big.subalgebra();
    // Positions of the smaller generators and of x_t inside Λ_larger.
    let pos = |i: usize| larger.iter().position(|&x| x == i).expect("member");
    let inner = SubalgebraInclusion::new(lam, &smaller.iter().map(|&i| pos(i)).collect::<Vec<_>>())?;
    let xt = lam.x(pos(t));
    let a_t = ambient.exponents()[t] as usize;
    let mut cols: Vec<Vector> = Vec::new();
    for j in 0..a_t {
        let power = xt.power(j as u32);
        for m in 0..inner.subalgebra().dim() {
            let b = inner.include(&inner.subalgebra().basis_element(m));
            cols.push((&b * &power).to_dense());
        }
    }
    let assembled = Matrix::from_columns(lam.field(), lam.dim(), &cols)?;
    let assembled_rank = assembled.rank();
    Ok(FreenessReport {
        smaller: smaller.to_vec(),
        larger: larger.to_vec(),
        added: t,
        rank: a_t,
        assembled_rank,
        free: cols.len() == lam.dim() && assembled_rank == lam.dim(),
    })
}

/// Every step `S ⊂ S ∪ {t}` with `S` nonempty.
pub fn chain_steps(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        for t in (0..n).filter(|&i| mask & (1 << i) == 0) {
            let mut l = s.clone();
            l.push(t);
            l.sort_unstable();
            out.push((s.clone(), l));
        }
    }
    out
}

/// A module with a `Z^n`-degree on each basis vector such that `x_i` raises
/// degree by the `i`-th unit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    module: FdModule,
    degrees: Vec<Vec<i64>>,
}

impl GradedModule {
    pub fn new(module: FdModule, degrees: Vec<Vec<i64>>) -> Result<GradedModule> {
        let n = module.algebra().n();
        if degrees.len() != module.dim() || degrees.iter().any(|d| d.len() != n) {
            return Err(Error::InvalidModule("one degree of length n per basis vector is required".into()));
        }
        for i in 0..n {
            let a = module.action(i);
            for r in 0..module.dim() {
                for c in 0..module.dim() {
                    if a.get(r, c).is_zero() {
                        continue;
                    }
                    let ok = (0..n).all(|k| degrees[r][k] == degrees[c][k] + i64::from(k == i));
                    if !ok {
                        return Err(Error::InvalidModule(format!("x{} does not raise degree by a unit vector", i + 1)));
                    }
                }
            }
        }
        Ok(GradedModule { module, degrees })
    }

    pub fn module(&self) -> &FdModule {
        &self.module
    }

    pub fn degrees(&self) -> &[Vec<i64>] {
        &self.degrees
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn algebra(&self) -> &Qci {
        self.module.algebra()
    }

    /// Distinct degree differences `deg r - deg c` over all basis pairs,
    /// sorted; only these can carry homogeneous maps.
    pub fn degree_shifts(&self, target: &GradedModule) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = target
            .degrees
            .iter()
            .flat_map(|dr| self.degrees.iter().map(move |dc| dr.iter().zip(dc).map(|(a, b)| a - b).collect()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Basis of homogeneous homs of degree `delta` into `target`.
    pub fn hom_space_of_degree(&self, target: &GradedModule, delta: &[i64]) -> Result<Vec<ModuleHom>> {
        if self.algebra() != target.algebra() {
            return Err(Error::PresentationMismatch);
        }
        let field = self.algebra().field();
        let n = self.algebra().n();
        let (dm, dn) = (self.dim(), target.dim());
        let shifted = |c: usize, extra: Option<usize>| -> Vec<i64> {
            (0..n).map(|k| self.degrees[c][k] + delta[k] + i64::from(extra == Some(k))).collect()
        };
        let mut unknown = vec![usize::MAX; dm * dn];
        let mut count = 0;
        for r in 0..dn {
            for c in 0..dm {
                if target.degrees[r] == shifted(c, None) {
                    unknown[r * dm + c] = count;
                    count += 1;
                }
            }
        }
        if count == 0 {
            return Ok(Vec::new());
        }
        // (F A_i - B_i F)[r][c] = 0 where deg r = deg c + δ + e_i.
        let mut rows: Vec<Vector> = Vec::new();
        for i in 0..n {
            let (a, b) = (self.module.action(i), target.module().action(i));
            for r in 0..dn {
                for c in 0..dm {
                    if target.degrees[r] != shifted(c, Some(i)) {
                        continue;
                    }
                    let mut row = vec![field.zero(); count];
                    for k in 0..dm {
                        let u = unknown[r * dm + k];
                        if u != usize::MAX && !a.get(k, c).is_zero() {
                            row[u] = &row[u] + a.get(k, c);
                        }
                    }
                    for k in 0..dn {
                        let u = unknown[k * dm + c];
                        if u != usize::MAX && !b.get(r, k).is_zero() {
                            row[u] = &row[u] - b.get(r, k);
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..count)
                .map(|u| {
                    let mut v = vec![field.zero(); count];
                    v[u] = field.one();
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(field, count, rows)?.kernel_basis()
        };
        Ok(kernel
            .into_iter()
            .map(|v| {
                let mut m = Matrix::zeros(field, dn, dm);
                for (pos, &u) in unknown.iter().enumerate() {
                    if u != usize::MAX && !v[u].is_zero() {
                        m.set(pos / dm, pos % dm, v[u].clone());
                    }
                }
                ModuleHom::from_parts(&self.module, &target.module, m)
            })
            .collect())
    }
}

/// `M₁ ⊗^g M₂` over the twisted tensor algebra: `x_i ↦ A_i ⊗ I` for `i ≤ n`
/// and `x_{n+1} ↦ D (I ⊗ B)` with `D = diag g(|m₁|, 1)`.
pub fn tensor_module(m1: &GradedModule, m2: &GradedModule, q_col: &[Scalar]) -> Result<GradedModule> {
    let big = twisted_tensor(m1.algebra(), m2.algebra(), q_col)?;
    let field = big.field();
    let (d1, d2) = (m1.dim(), m2.dim());
    let id2 = Matrix::identity(field, d2);
    let mut actions: Vec<Matrix> = m1.module().actions().iter().map(|a| a.kron(&id2)).collect();
    let mut last = Matrix::identity(field, d1).kron(m2.module().action(0));
    for r in 0..d1 * d2 {
        let g = twist_factor(q_col, &m1.degrees()[r / d2], 1);
        for c in 0..d1 * d2 {
            if !last.get(r, c).is_zero() {
                let v = last.get(r, c) * &g;
                last.set(r, c, v);
            }
        }
    }
    actions.push(last);
    let module = FdModule::new(&big, actions)?;
    let degrees = (0..d1 * d2)
        .map(|idx| {
            let mut d = m1.degrees()[idx / d2].clone();
            d.extend_from_slice(&m2.degrees()[idx % d2]);
            d
        })
        .collect();
    GradedModule::new(module, degrees)
}

/// A graded module with a known decomposition into indecomposable summands,
/// one of which is the regular module, witnessed by split maps.
#[derive(Clone, Debug)]
pub struct Generator {
    graded: GradedModule,
    summands: Vec<Vec<usize>>,
    regular: usize,
    inclusion: ModuleHom,
    projection: ModuleHom,
}

impl Generator {
    pub fn graded(&self) -> &GradedModule {
        &self.graded
    }

    pub fn module(&self) -> &FdModule {
        self.graded.module()
    }

    pub fn dim(&self) -> usize {
        self.graded.dim()
    }

    /// Basis indices of each summand.
    pub fn summands(&self) -> &[Vec<usize>] {
        &self.summands
    }

    pub fn regular_summand(&self) -> usize {
        self.regular
    }

    /// `Λ → M` onto the regular summand.
    pub fn inclusion(&self) -> &ModuleHom {
        &self.inclusion
    }

    /// `M → Λ`, a left inverse of [`Generator::inclusion`].
    pub fn projection(&self) -> &ModuleHom {
        &self.projection
    }

    pub fn splits(&self) -> bool {
        self.projection.compose(&self.inclusion).map(|h| h.matrix() == ModuleHom::identity(h.source()).matrix()).unwrap_or(false)
    }

    /// Idempotent projections onto the summands, as degree-0 endomorphisms.
    pub fn summand_projections(&self) -> Vec<ModuleHom> {
        let field = self.graded.algebra().field();
        self.summands
            .iter()
            .map(|s| {
                let mut m = Matrix::zeros(field, self.dim(), self.dim());
                for &i in s {
                    m.set(i, i, field.one());
                }
                ModuleHom::from_parts(self.module(), self.module(), m)
            })
            .collect()
    }

    /// `⊕_{i=1}^a k[x]/(x^i)`, each summand generated in degree 0.
    pub fn auslander_n1(field: &Field, a: u32) -> Result<Generator> {
        let alg = Qci::new(field, vec![a], vec![])?;
        let dim = (a * (a + 1) / 2) as usize;
        let mut act = Matrix::zeros(field, dim, dim);
        let mut summands: Vec<Vec<usize>> = Vec::new();
        let mut degrees = Vec::new();
        let mut start = 0;
        for i in 1..=a as usize {
            for j in 0..i {
                if j + 1 < i {
                    act.set(start + j + 1, start + j, field.one());
                }
                degrees.push(vec![j as i64]);
            }
            summands.push((start..start + i).collect());
            start += i;
        }
        let graded = GradedModule::new(FdModule::new(&alg, vec![act])?, degrees)?;
        let regular = a as usize - 1;
        let gen = summands[regular][0];
        Self::assemble(graded, summands, regular, gen)
    }

    /// The summand decomposition of `M₁ ⊗^g M₂` is the product of the two.
    pub fn tensor(g1: &Generator, g2: &Generator, q_col: &[Scalar]) -> Result<Generator> {
        let graded = tensor_module(&g1.graded, &g2.graded, q_col)?;
        let d2 = g2.dim();
        let mut summands = Vec::new();
        for s in &g1.summands {
            for t in &g2.summands {
                summands.push(s.iter().flat_map(|&i| t.iter().map(move |&j| i * d2 + j)).collect());
            }
        }
        let regular = g1.regular * g2.summands.len() + g2.regular;
        let gen = g1.summands[g1.regular][0] * d2 + g2.summands[g2.regular][0];
        Self::assemble(graded, summands, regular, gen)
    }

    /// The iterated generator over `Λ_n^a`.
    pub fn homogeneous(field: &Field, n: usize, a: u32) -> Result<Generator> {
        let q = field.primitive_root_of_unity(u64::from(a))?;
        let one = Self::auslander_n1(field, a)?;
        let mut acc = one.clone();
        for k in 1..n {
            acc = Self::tensor(&acc, &one, &vec![q.clone(); k])?;
        }
        Ok(acc)
    }

    fn assemble(graded: GradedModule, summands: Vec<Vec<usize>>, regular: usize, gen: usize) -> Result<Generator> {
        let m = graded.module().clone();
        let alg = m.algebra().clone();
        let field = alg.field().clone();
        let mut v = vec![field.zero(); m.dim()];
        v[gen] = field.one();
        let cols = m.orbit(&v);
        let reg = FdModule::regular(&alg);
        let inclusion = ModuleHom::new(&reg, &m, Matrix::from_columns(&field, m.dim(), &cols)?)?;
        let block = &summands[regular];
        if block.len() != alg.dim() {
            return Err(Error::InvalidModule("the regular summand has the wrong dimension".into()));
        }
        let square: Vec<Vector> = cols.iter().map(|c| block.iter().map(|&r| c[r].clone()).collect()).collect();
        let sq = Matrix::from_columns(&field, block.len(), &square)?;
        let units: Vec<Vector> = (0..block.len())
            .map(|k| {
                let mut e = vec![field.zero(); block.len()];
                e[k] = field.one();
                e
            })
            .collect();
        let mut proj = Matrix::zeros(&field, alg.dim(), m.dim());
        for (k, sol) in sq.solve_many(&units)?.into_iter().enumerate() {
            let sol = sol.ok_or_else(|| Error::InvalidModule("the regular summand is not free on the generator".into()))?;
            for (r, x) in sol.into_iter().enumerate() {
                proj.set(r, block[k], x);
            }
        }
        let projection = ModuleHom::new(&m, &reg, proj)?;
        let g = Generator { graded, summands, regular, inclusion, projection };
        debug_assert!(g.splits());
        Ok(g)
    }
}

/// Dimension of the span of homs, used to compare bases.
#[cfg(test)]
fn hom_span_dim(field: &Field, homs: &[ModuleHom]) -> usize {
    let Some(first) = homs.first() else { return 0 };
    let amb = first.matrix().rows() * first.matrix().cols();
    crate::linalg::Subspace::span(field, amb, homs.iter().map(|h| h.matrix().entries().to_vec()).collect()).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::hom_space;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn inclusion_and_retraction() {
        let l = Qci::homogeneous(&f5(), 3, 2).unwrap();
        let inc = SubalgebraInclusion::new(&l, &[0, 2]).unwrap();
        assert!(inc.retraction_is_left_inverse());
        assert!(inc.inclusion_is_multiplicative());
        assert_eq!(inc.retract(&l.x(1)), inc.subalgebra().zero());
    }

    #[test]
    fn restriction_of_regular_is_free() {
        let l = Qci::homogeneous(&f5(), 2, 2).unwrap();
        let inc = SubalgebraInclusion::new(&l, &[0]).unwrap();
        let r = restrict(&FdModule::regular(&l), &inc).unwrap();
        assert_eq!(r.dim(), 4);
        let free = FdModule::free(inc.subalgebra(), 2);
        assert_eq!(hom_space(&r, &free).unwrap().len(), 8);
        assert!(restrict(&FdModule::zero(&l), &inc).unwrap().is_zero());
    }

    #[test]
    fn freeness_steps() {
        let l = Qci::homogeneous(&f5(), 3, 2).unwrap();
        let r = verify_freeness(&l, &[0], &[0, 1]).unwrap();
        assert!(r.free);
        assert_eq!(r.rank, 2);
        let r = verify_freeness(&l, &[0, 1], &[0, 1, 2]).unwrap();
        assert_eq!(r.assembled_rank, 8);
        assert!(matches!(verify_freeness(&l, &[0, 1], &[0, 1]), Err(Error::InvalidChainStep(_))));
    }

    #[test]
    fn generator_n1() {
        let q = Field::cyclotomic(2).unwrap();
        let g = Generator::auslander_n1(&q, 2).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(g.splits());
        assert_eq!(Generator::auslander_n1(&q, 3).unwrap().dim(), 6);
    }

    #[test]
    fn tensor_generator_n2() {
        let q = Field::cyclotomic(2).unwrap();
        let g = Generator::homogeneous(&q, 2, 2).unwrap();
        assert_eq!(g.dim(), 9);
        assert!(g.module().satisfies_relations());
        assert_eq!(g.graded().algebra(), &Qci::homogeneous(&q, 2, 2).unwrap());
        assert!(g.splits());
    }

    #[test]
    fn graded_homs_cover_all_homs() {
        let q = Field::cyclotomic(2).unwrap();
        let g = Generator::auslander_n1(&q, 3).unwrap();
        let m = g.graded();
        let all: Vec<ModuleHom> =
            m.degree_shifts(m).iter().flat_map(|d| m.hom_space_of_degree(m, d).unwrap()).collect();
        let full = hom_space(m.module(), m.module()).unwrap();
        assert_eq!(hom_span_dim(&q, &all), full.len());
        assert_eq!(full.len(), 14);
        assert_eq!(m.hom_space_of_degree(m, &[0]).unwrap().len(), 6);
    }

    #[test]
    fn bad_grading_rejected() {
        let q = Field::cyclotomic(2).unwrap();
        let g = Generator::auslander_n1(&q, 2).unwrap();
        let bad = vec![vec![0]; 3];
        assert!(GradedModule::new(g.module().clone(), bad).is_err());
    }
}
