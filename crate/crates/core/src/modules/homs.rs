//! Presentations, homomorphism spaces, projective covers, injective
//! envelopes and stable Hom.
//!
//! `Λ` is local and selfinjective: projective covers are `Λ^t` with
//! `t = dim M / rad M`, injective envelopes are `Λ^s` with `s = dim soc M`,
//! and a map is stably zero iff it factors through a free module.

use rand::Rng;

use super::{random_combination, FdModule, ModuleHom};
use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::par;

/// A minimal projective presentation `⊕ Λ r_j → Λ^t → M → 0`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    module: FdModule,
    /// Standard basis positions of `M` used as generators.
    generators: Vec<usize>,
    /// Module generators of the kernel, as `t`-tuples of algebra elements.
    relations: Vec<Vec<Element>>,
    /// For each basis vector `e_j` of `M`, a preimage in `Λ^t`.
    section: Vec<Vec<Element>>,
    /// The epimorphism `Λ^t → M`.
    cover: Matrix,
}

fn split_chunks(alg: &crate::algebra::Qci, v: &[crate::Scalar], t: usize) -> Vec<Element> {
    let d = alg.dim();
    (0..t).map(|k| alg.from_dense(&v[k * d..(k + 1) * d])).collect()
}

/// Epimorphism `Λ^t → M` sending the `k`-th free generator to `e_{gens[k]}`.
fn cover_matrix(m: &FdModule, gens: &[usize]) -> Matrix {
    let mons = m.monomial_matrices();
    let cols: Vec<Vector> = gens.iter().flat_map(|&g| mons.iter().map(move |mm| mm.column(g))).collect();
    Matrix::from_columns(m.algebra().field(), m.dim(), &cols).expect("column lengths")
}

impl ModulePresentation {
    pub fn of(m: &FdModule) -> ModulePresentation {
        let alg = m.algebra();
        let field = alg.field();
        let d = alg.dim();
        let generators = m.top_positions();
        let t = generators.len();
        let cover = cover_matrix(m, &generators);
        let kernel = cover.kernel_basis();

        let left: Vec<Matrix> = (0..alg.n()).map(|i| alg.left_mult_matrix(&alg.x(i))).collect();
        let act_free = |i: usize, v: &Vector| -> Vector {
            (0..t).flat_map(|k| left[i].mul_vec(&v[k * d..(k + 1) * d]).expect("length")).collect()
        };
        let rad_vecs: Vec<Vector> = kernel.iter().flat_map(|v| (0..alg.n()).map(move |i| (i, v))).map(|(i, v)| act_free(i, v)).collect();
        let mut span = Subspace::span(field, t * d, rad_vecs);
        let mut relations = Vec::new();
        for v in &kernel {
            if !span.contains(v) {
                span = span.sum(&Subspace::span(field, t * d, vec![v.clone()]));
                relations.push(split_chunks(alg, v, t));
            }
        }

        let units: Vec<Vector> = (0..m.dim())
            .map(|j| {
                let mut e = vec![field.zero(); m.dim()];
                e[j] = field.one();
                e
            })
            .collect();
        let section = cover
            .solve_many(&units)
            .expect("shapes")
            .into_iter()
            .map(|s| split_chunks(alg, &s.expect("cover is surjective"), t))
            .collect();
        ModulePresentation { module: m.clone(), generators, relations, section, cover }
    }

    pub fn module(&self) -> &FdModule {
        &self.module
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<Element>] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Linear conditions on generator images `(n_1, ..., n_t) ∈ N^t` for them
    /// to define a homomorphism `M → N`.
    pub fn relation_matrix(&self, n: &FdModule) -> Matrix {
        let field = n.algebra().field();
        let t = self.num_generators();
        let dn = n.dim();
        let blocks: Vec<Vec<Vector>> = par::map(&self.relations, |rel| {
            let mats: Vec<Matrix> = rel.iter().map(|r| n.element_matrix(r)).collect();
            (0..dn).map(|row| mats.iter().flat_map(|mm| mm.row(row).to_vec()).collect()).collect()
        });
        Matrix::from_rows(field, t * dn, blocks.into_iter().flatten().collect()).expect("widths")
    }

    /// The homomorphism determined by generator images (concatenated).
    pub fn hom_from_images(&self, n: &FdModule, images: &[crate::Scalar]) -> ModuleHom {
        let field = n.algebra().field();
        let dn = n.dim();
        let orbits: Vec<Vec<Vector>> = (0..self.num_generators()).map(|k| n.orbit(&images[k * dn..(k + 1) * dn])).collect();
        let cols: Vec<Vector> = par::map(&self.section, |s| {
            let mut col = vec![field.zero(); dn];
            for (k, sk) in s.iter().enumerate() {
                for (m, c) in sk.terms() {
                    for (x, y) in col.iter_mut().zip(&orbits[k][m]) {
                        if !y.is_zero() {
                            *x = &*x + &(y * c);
                        }
                    }
                }
            }
            col
        });
        let mat = Matrix::from_columns(field, dn, &cols).expect("shape");
        ModuleHom::from_parts(&self.module, n, mat)
    }

    /// `(f(g_1), ..., f(g_t))` concatenated.
    pub fn generator_images(&self, f: &ModuleHom) -> Vector {
        self.generators.iter().flat_map(|&g| f.matrix().column(g)).collect()
    }

    /// Basis of `Hom(M, N)` in generator-image coordinates.
    pub fn hom_images(&self, n: &FdModule) -> Vec<Vector> {
        let t = self.num_generators();
        if t == 0 {
            return Vec::new();
        }
        self.relation_matrix(n).kernel_basis()
    }

    pub fn cover(&self) -> &Matrix {
        &self.cover
    }
}

/// Basis of `Hom(M, N)`, computed from a projective presentation of `M`.
pub fn hom_space(m: &FdModule, n: &FdModule) -> Result<Vec<ModuleHom>> {
    if m.algebra() != n.algebra() {
        return Err(Error::PresentationMismatch);
    }
    let pres = ModulePresentation::of(m);
    let images = pres.hom_images(n);
    Ok(par::map(&images, |u| pres.hom_from_images(n, u)))
}

/// Basis of `Hom(M, N)` from the equivariance system `F A_i = B_i F` in
/// `dim M · dim N` unknowns. Quadratic in size; meant for cross-checks.
pub fn hom_space_direct(m: &FdModule, n: &FdModule) -> Result<Vec<ModuleHom>> {
    if m.algebra() != n.algebra() {
        return Err(Error::PresentationMismatch);
    }
    let field = m.algebra().field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut rows = Vec::new();
    for (a, b) in m.actions().iter().zip(n.actions()) {
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![field.zero(); dn * dm];
                for k in 0..dm {
                    let x = a.get(k, c);
                    if !x.is_zero() {
                        row[r * dm + k] = &row[r * dm + k] + x;
                    }
                }
                for k in 0..dn {
                    let y = b.get(r, k);
                    if !y.is_zero() {
                        row[k * dm + c] = &row[k * dm + c] - y;
                    }
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(field, dn * dm, rows)?;
    sys.kernel_basis()
        .into_iter()
        .map(|v| {
            let rows = v.chunks(dm.max(1)).map(|c| c.to_vec()).collect();
            Ok(ModuleHom::from_parts(m, n, Matrix::from_rows(field, dm, rows)?))
        })
        .collect()
}

/// `P = Λ^t → M` lifting a basis of `M / rad M`.
pub fn projective_cover(m: &FdModule) -> (FdModule, ModuleHom) {
    let gens = m.top_positions();
    let p = FdModule::free(m.algebra(), gens.len());
    let epi = ModuleHom::from_parts(&p, m, cover_matrix(m, &gens));
    (p, epi)
}

/// `Ω(M)`: kernel of the projective cover, with its inclusion into the cover.
pub fn syzygy(m: &FdModule) -> Result<(FdModule, ModuleHom)> {
    let (_, epi) = projective_cover(m);
    epi.source().submodule(&epi.kernel())
}

/// Injective envelope `ι: X → Λ^s`, `s = dim soc X`, built from homomorphisms
/// `X → Λ` whose socle functionals (top coefficient on `soc X`) are independent.
pub fn injective_envelope(x: &FdModule) -> Result<ModuleHom> {
    let alg = x.algebra();
    let field = alg.field();
    let soc = x.socle();
    let s = soc.dim();
    let lam = FdModule::regular(alg);
    let homs = hom_space(x, &lam)?;
    let top = alg.top_monomial();
    let mut chosen: Vec<&ModuleHom> = Vec::new();
    let mut functionals = Subspace::span(field, s, Vec::new());
    for h in &homs {
        if chosen.len() == s {
            break;
        }
        let ell: Vector = soc.basis().iter().map(|b| h.apply(b)[top].clone()).collect();
        if !functionals.contains(&ell) {
            functionals = functionals.sum(&Subspace::span(field, s, vec![ell]));
            chosen.push(h);
        }
    }
    if chosen.len() < s {
        return Err(Error::InvalidModule("could not embed the socle into a free module".into()));
    }
    let rows: Vec<Vector> = chosen.iter().flat_map(|h| h.matrix().row_vectors()).collect();
    let iota = Matrix::from_rows(field, x.dim(), rows)?;
    Ok(ModuleHom::from_parts(x, &FdModule::free(alg, s), iota))
}

/// `Ω^{-1}(X)`: cokernel of the injective envelope, with the projection.
pub fn cosyzygy(x: &FdModule) -> Result<(FdModule, ModuleHom)> {
    let iota = injective_envelope(x)?;
    iota.target().quotient(&iota.image())
}

/// Stably-zero test for maps `X → Y`: the maps factoring through the
/// projective cover `Λ^t → Y`, recorded in generator-image coordinates of `X`.
#[derive(Clone, Debug)]
pub struct StableHomTest {
    pres: ModulePresentation,
    target: FdModule,
    projective_maps: Subspace,
}

impl StableHomTest {
    pub fn new(x: &FdModule, y: &FdModule) -> Result<StableHomTest> {
        if x.algebra() != y.algebra() {
            return Err(Error::PresentationMismatch);
        }
        let alg = x.algebra();
        let pres = ModulePresentation::of(x);
        let t = pres.num_generators();
        let dy = y.dim();
        // Hom(X, Λ^u) = Hom(X, Λ)^u, composed with the cover Λ^u → Y whose
        // l-th generator goes to the top vector y_l.
        let to_lambda = pres.hom_images(&FdModule::regular(alg));
        let ys = y.top_positions();
        let field = alg.field();
        let orbits: Vec<Vec<Vector>> = ys
            .iter()
            .map(|&l| {
                let mut e = vec![field.zero(); dy];
                e[l] = field.one();
                y.orbit(&e)
            })
            .collect();
        let d = alg.dim();
        let spanning: Vec<Vector> = par::map(&to_lambda, |u| {
            orbits
                .iter()
                .map(|orb| {
                    let mut out = vec![field.zero(); t * dy];
                    for k in 0..t {
                        for m in 0..d {
                            let c = &u[k * d + m];
                            if c.is_zero() {
                                continue;
                            }
                            for (x, v) in out[k * dy..(k + 1) * dy].iter_mut().zip(&orb[m]) {
                                if !v.is_zero() {
                                    *x = &*x + &(v * c);
                                }
                            }
                        }
                    }
                    out
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
        let projective_maps = Subspace::span(field, t * dy, spanning);
        Ok(StableHomTest { pres, target: y.clone(), projective_maps })
    }

    pub fn is_stably_zero(&self, f: &ModuleHom) -> Result<bool> {
        if f.source() != self.pres.module() || f.target() != &self.target {
            return Err(Error::PresentationMismatch);
        }
        Ok(self.projective_maps.contains(&self.pres.generator_images(f)))
    }

    /// `dim Hom(X, Y) - dim PHom(X, Y)`.
    pub fn stable_dim(&self) -> usize {
        self.pres.hom_images(&self.target).len() - self.projective_maps.dim()
    }
}

/// Whether `f` factors through a projective module (lifts along the
/// projective cover of its target).
pub fn stably_zero(f: &ModuleHom) -> Result<bool> {
    StableHomTest::new(f.source(), f.target())?.is_stably_zero(f)
}

/// Whether `f` extends along the injective envelope of its source; equivalent
/// to [`stably_zero`] since `Λ` is selfinjective.
pub fn stably_zero_via_envelope(f: &ModuleHom) -> Result<bool> {
    let x = f.source();
    let y = f.target();
    if x.is_zero() {
        return Ok(true);
    }
    let alg = x.algebra();
    let field = alg.field();
    let iota = injective_envelope(x)?;
    let s = iota.target().dim() / alg.dim();
    let d = alg.dim();
    let dy = y.dim();
    // Unknowns y_1..y_s with Σ_k ι_k(e_j) · y_k = f(e_j) for every basis vector e_j.
    let blocks: Vec<(Vec<Vector>, Vector)> = par::map_range(x.dim(), |j| {
        let col = iota.matrix().column(j);
        let mats: Vec<Matrix> = (0..s).map(|k| y.element_matrix(&alg.from_dense(&col[k * d..(k + 1) * d]))).collect();
        let rows = (0..dy).map(|r| mats.iter().flat_map(|m| m.row(r).to_vec()).collect()).collect();
        (rows, f.matrix().column(j))
    });
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (r, b) in blocks {
        rows.extend(r);
        rhs.extend(b);
    }
    let sys = Matrix::from_rows(field, s * dy, rows)?;
    Ok(sys.solve(&rhs)?.is_some())
}

/// Outcome of a randomized isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Isomorphic(ModuleHom),
    DimensionsDiffer,
    /// No invertible map found among the samples; not a proof of non-isomorphism.
    Inconclusive,
}

/// Samples random elements of `Hom(M, N)` and tests invertibility.
pub fn iso_search<R: Rng + ?Sized>(m: &FdModule, n: &FdModule, trials: usize, rng: &mut R) -> Result<IsoVerdict> {
    if m.dim() != n.dim() {
        return Ok(IsoVerdict::DimensionsDiffer);
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Isomorphic(ModuleHom::zero(m, n)));
    }
    let homs = hom_space(m, n)?;
    for _ in 0..trials {
        if let Some(h) = random_combination(&homs, rng, 1 << 20) {
            if h.is_isomorphism() {
                return Ok(IsoVerdict::Isomorphic(h));
            }
        }
    }
    Ok(IsoVerdict::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Qci;
    use crate::linalg::Matrix;
    use crate::scalars::Field;

    fn lam(n: usize, a: u32) -> Qci {
        let p = if a == 2 { 5 } else { 7 };
        Qci::homogeneous(&Field::prime(p).unwrap(), n, a).unwrap()
    }

    fn simple(alg: &Qci) -> FdModule {
        FdModule::new(alg, vec![Matrix::zeros(alg.field(), 1, 1); alg.n()]).unwrap()
    }

    #[test]
    fn hom_from_free_module_has_target_dimension() {
        let l = lam(2, 2);
        let reg = FdModule::regular(&l);
        let k = simple(&l);
        let m = k.direct_sum(&reg).unwrap();
        assert_eq!(hom_space(&reg, &m).unwrap().len(), m.dim());
        assert_eq!(hom_space(&m, &reg).unwrap().len(), m.dim());
        assert!(hom_space(&m, &FdModule::zero(&l)).unwrap().is_empty());
    }

    #[test]
    fn socle_hom_in_truncated_ring() {
        let l = lam(1, 2);
        let homs = hom_space(&simple(&l), &FdModule::regular(&l)).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].is_equivariant());
    }

    #[test]
    fn both_hom_routes_agree_in_dimension() {
        let l = lam(2, 3);
        let reg = FdModule::regular(&l);
        let q = reg.quotient(&reg.radical()).unwrap().0;
        let rad = reg.submodule(&reg.radical()).unwrap().0;
        for (a, b) in [(&rad, &rad), (&q, &rad), (&rad, &reg), (&reg, &q)] {
            let h1 = hom_space(a, b).unwrap();
            let h2 = hom_space_direct(a, b).unwrap();
            assert_eq!(h1.len(), h2.len());
            assert!(h1.iter().all(ModuleHom::is_equivariant));
        }
    }

    #[test]
    fn projective_cover_examples() {
        let l = lam(1, 2);
        let k2 = simple(&l).direct_sum(&simple(&l)).unwrap();
        let (p, epi) = projective_cover(&k2);
        assert_eq!(p.dim(), 4);
        assert!(epi.is_surjective() && epi.is_equivariant());
        let reg = FdModule::regular(&l);
        let (p, epi) = projective_cover(&reg);
        assert_eq!(p, reg);
        assert_eq!(epi.matrix(), &Matrix::identity(l.field(), 2));
    }

    #[test]
    fn syzygy_of_free_is_zero_and_cosyzygy_inverts() {
        let l = lam(2, 2);
        let reg = FdModule::regular(&l);
        assert!(syzygy(&reg).unwrap().0.is_zero());
        let k = simple(&l);
        let (om, _) = syzygy(&k).unwrap();
        assert_eq!(om.dim(), 3);
        let (back, _) = cosyzygy(&om).unwrap();
        assert_eq!(back.dim(), 1);
        let (co, _) = cosyzygy(&k).unwrap();
        assert_eq!(co.dim(), 3);
    }

    #[test]
    fn stable_zero_basics() {
        let l = lam(2, 2);
        let reg = FdModule::regular(&l);
        let k = simple(&l);
        assert!(stably_zero(&ModuleHom::identity(&reg)).unwrap());
        assert!(!stably_zero(&ModuleHom::identity(&k)).unwrap());
        assert!(stably_zero(&ModuleHom::zero(&k, &k)).unwrap());
        assert!(stably_zero_via_envelope(&ModuleHom::identity(&reg)).unwrap());
        assert!(!stably_zero_via_envelope(&ModuleHom::identity(&k)).unwrap());
        // k → Λ (socle inclusion) lands in a projective
        let soc = hom_space(&k, &reg).unwrap().pop().unwrap();
        assert!(stably_zero(&soc).unwrap());
    }
}
