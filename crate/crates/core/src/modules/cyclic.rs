//! Cyclic modules `Λ/Λe`, right multiplications between them, the chain of
//! maps composing to `·w_α`, and the two periodicity diagrams.

use serde::Serialize;

use super::{syzygy, FdModule, ModuleHom};
use crate::algebra::{Element, Qci};
use crate::certificates::{build_w, sigma_sum};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalars::Scalar;

/// The left module `Λ/Λe` with the canonical surjection from `Λ`. Its basis is
/// the classes of the monomials in `positions`.
#[derive(Clone, Debug)]
pub struct CyclicQuotient {
    generator: Element,
    ideal: Subspace,
    module: FdModule,
    projection: ModuleHom,
    positions: Vec<usize>,
}

impl CyclicQuotient {
    /// `Λ/Λe` for `e ≠ 0`.
    pub fn new(e: &Element) -> Result<CyclicQuotient> {
        if e.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(Self::build(e))
    }

    /// `Λ` itself, viewed as `Λ/Λ·0`.
    pub fn regular(alg: &Qci) -> CyclicQuotient {
        Self::build(&alg.zero())
    }

    fn build(e: &Element) -> CyclicQuotient {
        let alg = e.algebra();
        let cols: Vec<Vector> = if e.is_zero() {
            Vec::new()
        } else {
            (0..alg.dim()).map(|m| e.mul_basis_left(m).to_dense()).collect()
        };
        let ideal = Subspace::span(alg.field(), alg.dim(), cols);
        let reg = FdModule::regular(alg);
        let (module, projection) = reg.quotient(&ideal).expect("Λe is a left ideal");
        let positions = ideal.complement_positions();
        CyclicQuotient { generator: e.clone(), ideal, module, projection, positions }
    }

    pub fn generator(&self) -> &Element {
        &self.generator
    }

    pub fn module(&self) -> &FdModule {
        &self.module
    }

    /// `Λ → Λ/Λe`.
    pub fn projection(&self) -> &ModuleHom {
        &self.projection
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// The left ideal `Λe` as a subspace of `Λ`.
    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Coordinates of the class of `λ`.
    pub fn class_of(&self, lambda: &Element) -> Vector {
        self.ideal.quotient_coordinates(&lambda.to_dense())
    }
}

/// `Λ/Λe → Λ/Λe'`, `λ ↦ λr`; well defined iff `er ∈ Λe'`.
pub fn right_mult_map(source: &CyclicQuotient, target: &CyclicQuotient, r: &Element) -> Result<ModuleHom> {
    let er = &source.generator * r;
    if !target.ideal.contains(&er.to_dense()) {
        return Err(Error::IllDefinedMap(format!("e·r = {er} is not in the target ideal")));
    }
    let alg = r.algebra();
    let cols: Vec<Vector> = source.positions.iter().map(|&c| target.class_of(&r.mul_basis_left(c))).collect();
    let mat = Matrix::from_columns(alg.field(), target.dim(), &cols)?;
    Ok(ModuleHom::from_parts(&source.module, &target.module, mat))
}

/// The chain `f_1, ..., f_{n-1}` alternating between `Λ/(σ^{a-1})` and `Λ/(σ)`.
#[derive(Clone, Debug)]
pub struct FChain {
    pub sigma_quotient: CyclicQuotient,
    pub power_quotient: CyclicQuotient,
    pub maps: Vec<ModuleHom>,
    /// Right multipliers, `maps[i] = ·multipliers[i]`.
    pub multipliers: Vec<Element>,
}

impl FChain {
    /// `f_{n-1} ∘ ... ∘ f_1`.
    pub fn composition(&self) -> Result<ModuleHom> {
        let mut acc = self.maps[0].clone();
        for f in &self.maps[1..] {
            acc = f.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `·w_α : Λ/(σ^{a-1}) → Λ/(σ)` built directly.
    pub fn w_map(&self, w: &Element) -> Result<ModuleHom> {
        right_mult_map(&self.power_quotient, &self.sigma_quotient, w)
    }
}

/// Chain index `i` (1-based): odd `i ≤ n-3` is `·x_{n-i}`, even `i` is
/// `·S(n-i+2)`, and `i = n-1` is `·x_2`.
pub fn f_maps(alg: &Qci, alpha: &[Scalar]) -> Result<FChain> {
    let n = alg.n();
    if n % 2 == 1 {
        return Err(Error::OddCodimension(n));
    }
    let (a, _) = alg
        .homogeneous_params()
        .ok_or_else(|| Error::Config("the chain needs a homogeneous presentation".into()))?;
    let sigma = alg.sigma(alpha)?;
    let sigma_quotient = CyclicQuotient::new(&sigma)?;
    let power_quotient = CyclicQuotient::new(&sigma.power(a - 1))?;
    let mut maps = Vec::with_capacity(n - 1);
    let mut multipliers = Vec::with_capacity(n - 1);
    for i in 1..n {
        let (r, src, tgt) = if i == n - 1 {
            (alg.x(1), &power_quotient, &sigma_quotient)
        } else if i % 2 == 1 {
            (alg.x(n - i - 1), &power_quotient, &sigma_quotient)
        } else {
            (sigma_sum(alg, &sigma, n - i + 1)?, &sigma_quotient, &power_quotient)
        };
        maps.push(right_mult_map(src, tgt, &r)?);
        multipliers.push(r);
    }
    Ok(FChain { sigma_quotient, power_quotient, maps, multipliers })
}

/// Checks that the chain composes to `·w_α` as matrices.
pub fn chain_composes_to_w(alg: &Qci, alpha: &[Scalar]) -> Result<bool> {
    let chain = f_maps(alg, alpha)?;
    let w = build_w(alg, alpha)?;
    Ok(chain.composition()?.matrix() == chain.w_map(&w)?.matrix())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityReport {
    pub rows_exact: bool,
    pub squares_commute: bool,
    pub omega_isomorphisms: bool,
    pub dimensions_complementary: bool,
}

impl PeriodicityReport {
    pub fn passed(&self) -> bool {
        self.rows_exact && self.squares_commute && self.omega_isomorphisms && self.dimensions_complementary
    }
}

/// `0 → A --ι--> Λ --π--> B → 0` is exact.
fn row_exact(iota: &ModuleHom, pi: &ModuleHom) -> bool {
    iota.is_injective()
        && pi.is_surjective()
        && pi.compose(iota).map(|c| c.is_zero()).unwrap_or(false)
        && iota.source().dim() + pi.target().dim() == iota.target().dim()
}

fn commutes(top_then_down: (&ModuleHom, &ModuleHom), down_then_bottom: (&ModuleHom, &ModuleHom)) -> Result<bool> {
    let lhs = top_then_down.1.compose(top_then_down.0)?;
    let rhs = down_then_bottom.1.compose(down_then_bottom.0)?;
    Ok(lhs.matrix() == rhs.matrix())
}

/// If `f: A → Λ` lands in the syzygy of the cokernel and identifies `A` with
/// it, returns true. `Ω` is taken from [`syzygy`]; its cover of a cyclic
/// module is the canonical projection, so the inclusion lands in `Λ`.
fn realizes_syzygy(f: &ModuleHom, of: &FdModule) -> Result<bool> {
    let (om, inc) = syzygy(of)?;
    if inc.target() != f.target() || om.dim() != f.source().dim() {
        return Ok(false);
    }
    // Solve inc · φ = f column by column.
    let sols = inc.matrix().solve_many(&f.matrix().columns())?;
    let Some(cols) = sols.into_iter().collect::<Option<Vec<_>>>() else { return Ok(false) };
    let phi = ModuleHom::from_parts(f.source(), &om, Matrix::from_columns(f.source().algebra().field(), om.dim(), &cols)?);
    Ok(phi.is_equivariant() && phi.is_isomorphism())
}

/// Verifies the two commutative diagrams with exact rows
/// `0 → Λ/(σ) --·σ^{a-1}--> Λ → Λ/(σ^{a-1}) → 0` and
/// `0 → Λ/(σ^{a-1}) --·(-σ)--> Λ → Λ/(σ) → 0`, linked by `·x_p` and `·S(p)`,
/// and that the rows realize `Ω(Λ/(σ)) ≅ Λ/(σ^{a-1})` and `Ω(Λ/(σ^{a-1})) ≅ Λ/(σ)`.
pub fn periodicity_diagrams_check(alg: &Qci, alpha: &[Scalar], p: usize) -> Result<PeriodicityReport> {
    let (a, _) = alg
        .homogeneous_params()
        .ok_or_else(|| Error::Config("the diagrams need a homogeneous presentation".into()))?;
    if p == 0 || p > alg.n() {
        return Err(Error::Config(format!("variable index {p} out of range 1..={}", alg.n())));
    }
    let sigma = alg.sigma(alpha)?;
    let q = CyclicQuotient::new(&sigma)?;
    let qp = CyclicQuotient::new(&sigma.power(a - 1))?;
    let lam = CyclicQuotient::regular(alg);
    let xp = alg.x(p - 1);
    let s = sigma_sum(alg, &sigma, p - 1)?;
    let one = alg.one();

    // Row maps.
    let iota_q = right_mult_map(&q, &lam, &sigma.power(a - 1))?;
    let pi_qp = right_mult_map(&lam, &qp, &one)?;
    let iota_qp = right_mult_map(&qp, &lam, &(-&sigma))?;
    let pi_q = right_mult_map(&lam, &q, &one)?;
    let rows_exact = row_exact(&iota_q, &pi_qp) && row_exact(&iota_qp, &pi_q);

    // Vertical maps.
    let s_q_qp = right_mult_map(&q, &qp, &s)?;
    let x_lam = right_mult_map(&lam, &lam, &xp)?;
    let x_qp_q = right_mult_map(&qp, &q, &xp)?;
    let s_lam = right_mult_map(&lam, &lam, &s)?;
    let squares_commute = commutes((&iota_q, &x_lam), (&s_q_qp, &iota_qp))?
        && commutes((&pi_qp, &x_qp_q), (&x_lam, &pi_q))?
        && commutes((&iota_qp, &s_lam), (&x_qp_q, &iota_q))?
        && commutes((&pi_q, &s_q_qp), (&s_lam, &pi_qp))?;

    let omega_isomorphisms = realizes_syzygy(&iota_q, qp.module())? && realizes_syzygy(&iota_qp, q.module())?;
    let dimensions_complementary = q.dim() + qp.dim() == alg.dim();
    Ok(PeriodicityReport { rows_exact, squares_commute, omega_isomorphisms, dimensions_complementary })
}
