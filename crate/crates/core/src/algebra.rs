//! Quantum complete intersections
//! `k<X_1..X_n> / (X_u^{a_u}, X_i X_j - q_ij X_j X_i)` in PBW normal form.
//!
//! Basis monomials are `x_1^{e_1} ... x_n^{e_n}` with `0 <= e_i < a_i`, stored
//! by their mixed-radix index (lexicographic in the exponent vector). The
//! product of two monomials is computed in closed form: moving `x_i^{f_i}`
//! left past `x_j^{e_j}` (i < j) costs `q_ij^{-e_j f_i}`, because the relation
//! gives `x_j x_i = q_ij^{-1} x_i x_j`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalars::{Field, FieldSpec, Scalar};

/// Exponent vector of a PBW monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Multidegree in `Z^n`; with `x_i` in degree `e_i` this is the exponent vector.
    pub fn multidegree(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
            any = true;
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

struct QciInner {
    field: Field,
    exponents: Vec<u32>,
    /// `q_ij` for `i < j`, row-major over the strict upper triangle.
    commutators: Vec<Scalar>,
    strides: Vec<usize>,
    dim: usize,
    /// `inv_pows[pair][k] = q_ij^{-k}`.
    inv_pows: Vec<Vec<Scalar>>,
}

/// A quantum complete intersection presentation. Cheap to clone.
#[derive(Clone)]
pub struct Qci(Arc<QciInner>);

impl fmt::Debug for Qci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Qci")
            .field("field", &self.0.field.spec())
            .field("exponents", &self.0.exponents)
            .field("commutators", &self.0.commutators.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for Qci {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.exponents == other.0.exponents
                && self.0.commutators == other.0.commutators)
    }
}
impl Eq for Qci {}

pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl Qci {
    /// Builds a presentation from exponents `a_i >= 2` and the strict upper
    /// triangle of nonzero commutators `q_12, q_13, ..., q_1n, q_23, ...`.
    pub fn new(field: &Field, exponents: Vec<u32>, commutators: Vec<Scalar>) -> Result<Qci> {
        let n = exponents.len();
        if n == 0 {
            return Err(Error::Config("codimension must be at least 1".into()));
        }
        if exponents.iter().any(|&a| a < 2) {
            return Err(Error::Config("every exponent must be at least 2".into()));
        }
        if commutators.len() != n * (n - 1) / 2 {
            return Err(Error::DimensionMismatch { expected: n * (n - 1) / 2, found: commutators.len() });
        }
        if commutators.iter().any(Scalar::is_zero) {
            return Err(Error::Config("commutators must be nonzero".into()));
        }
        let probe = field.zero();
        if commutators.iter().any(|c| std::mem::discriminant(c) != std::mem::discriminant(&probe)) {
            return Err(Error::FieldMismatch);
        }
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * exponents[i + 1] as usize;
        }
        let dim = strides[0] * exponents[0] as usize;
        let mut inv_pows = Vec::with_capacity(commutators.len());
        for i in 0..n {
            for j in i + 1..n {
                let q = &commutators[pair_index(n, i, j)];
                let qi = q.inv().expect("nonzero commutator");
                let top = ((exponents[i] - 1) * (exponents[j] - 1)) as usize;
                let mut pows = Vec::with_capacity(top + 1);
                let mut acc = field.one();
                for _ in 0..=top {
                    pows.push(acc.clone());
                    acc = &acc * &qi;
                }
                inv_pows.push(pows);
            }
        }
        Ok(Qci(Arc::new(QciInner { field: field.clone(), exponents, commutators, strides, dim, inv_pows })))
    }

    /// The homogeneous algebra `Λ_n^a`: every exponent `a`, every commutator the
    /// field's distinguished primitive `a`-th root of unity.
    pub fn homogeneous(field: &Field, n: usize, a: u32) -> Result<Qci> {
        let q = field.primitive_root_of_unity(a as u64)?;
        Qci::homogeneous_with(field, n, a, q)
    }

    /// All exponents `a`, all commutators `q` (not checked to be a root of unity).
    pub fn homogeneous_with(field: &Field, n: usize, a: u32, q: Scalar) -> Result<Qci> {
        Qci::new(field, vec![a; n], vec![q; n * n.saturating_sub(1) / 2])
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn n(&self) -> usize {
        self.0.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0.exponents
    }

    pub fn commutators(&self) -> &[Scalar] {
        &self.0.commutators
    }

    /// `q_ij` for 0-based `i < j`.
    pub fn commutator(&self, i: usize, j: usize) -> &Scalar {
        &self.0.commutators[pair_index(self.n(), i, j)]
    }

    /// Index offset of `x_{i+1}` in the mixed-radix numbering.
    pub fn stride(&self, i: usize) -> usize {
        self.0.strides[i]
    }

    /// Dimension `∏ a_i`.
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// `Some((a, q))` when all exponents equal `a`, all commutators equal `q`,
    /// and `q` is a primitive `a`-th root of unity.
    pub fn homogeneous_params(&self) -> Option<(u32, Scalar)> {
        let a = self.0.exponents[0];
        if self.0.exponents.iter().any(|&e| e != a) {
            return None;
        }
        let q = if self.n() == 1 {
            // Codimension one carries no commutator; use the field's root if any.
            self.field().primitive_root_of_unity(a as u64).ok()?
        } else {
            self.0.commutators[0].clone()
        };
        if self.0.commutators.iter().any(|c| *c != q) {
            return None;
        }
        (q.multiplicative_order(a as u64) == Some(a as u64)).then_some((a, q))
    }

    pub fn monomial_index(&self, exps: &[u32]) -> Option<usize> {
        if exps.len() != self.n() {
            return None;
        }
        let mut idx = 0;
        for ((&e, &a), &s) in exps.iter().zip(&self.0.exponents).zip(&self.0.strides) {
            if e >= a {
                return None;
            }
            idx += e as usize * s;
        }
        Some(idx)
    }

    pub fn exponents_of(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.n()];
        for (i, &s) in self.0.strides.iter().enumerate() {
            out[i] = (idx / s) as u32;
            idx %= s;
        }
        out
    }

    pub fn monomial(&self, idx: usize) -> Monomial {
        Monomial(self.exponents_of(idx))
    }

    pub fn total_degree_of(&self, idx: usize) -> u32 {
        self.exponents_of(idx).iter().sum()
    }

    /// Largest total degree `Σ (a_i - 1)`.
    pub fn top_degree(&self) -> u32 {
        self.0.exponents.iter().map(|a| a - 1).sum()
    }

    /// Index of the socle monomial `∏ x_i^{a_i - 1}`.
    pub fn top_monomial(&self) -> usize {
        self.dim() - 1
    }

    /// Product of two basis monomials: `Some((index, coefficient))` or `None` if zero.
    pub fn monomial_product(&self, left: usize, right: usize) -> Option<(usize, Scalar)> {
        let e = self.exponents_of(left);
        let f = self.exponents_of(right);
        let n = self.n();
        for i in 0..n {
            if e[i] + f[i] >= self.0.exponents[i] {
                return None;
            }
        }
        let mut c = self.field().one();
        for i in 0..n {
            if f[i] == 0 {
                continue;
            }
            for j in i + 1..n {
                let k = (e[j] * f[i]) as usize;
                if k != 0 {
                    c = &c * &self.0.inv_pows[pair_index(n, i, j)][k];
                }
            }
        }
        Some((left + right, c))
    }

    /// All basis monomials of total degree `d`, in lexicographic order of the
    /// words they spell (`x1 < x2`, so `x1x2 < x1x3 < x2x3`).
    pub fn graded_component_basis(&self, d: u32) -> Vec<usize> {
        (0..self.dim()).rev().filter(|&m| self.total_degree_of(m) == d).collect()
    }

    pub fn zero(&self) -> Element {
        Element { alg: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Element {
        self.basis_element(0)
    }

    pub fn basis_element(&self, idx: usize) -> Element {
        self.term(idx, self.field().one())
    }

    pub fn term(&self, idx: usize, c: Scalar) -> Element {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(idx, c);
        }
        Element { alg: self.clone(), terms }
    }

    pub fn scalar(&self, c: Scalar) -> Element {
        self.term(0, c)
    }

    /// The generator `x_{i+1}` (0-based `i`).
    pub fn x(&self, i: usize) -> Element {
        let mut e = vec![0; self.n()];
        e[i] = 1;
        self.basis_element(self.monomial_index(&e).expect("exponent 1 is below a_i"))
    }

    /// `σ_α = α_1 x_1 + ... + α_n x_n`.
    pub fn sigma(&self, alpha: &[Scalar]) -> Result<Element> {
        if alpha.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: alpha.len() });
        }
        let mut out = self.zero();
        for (i, a) in alpha.iter().enumerate() {
            out = &out + &self.x(i).scale(a);
        }
        Ok(out)
    }

    pub fn from_dense(&self, v: &[Scalar]) -> Element {
        let terms = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        Element { alg: self.clone(), terms }
    }

    /// Matrix of `λ ↦ e·λ` on the PBW basis.
    pub fn left_mult_matrix(&self, e: &Element) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|m| e.mul_basis_right(m).to_dense()).collect();
        Matrix::from_columns(self.field(), self.dim(), &cols).expect("square")
    }

    /// Matrix of `λ ↦ λ·e` on the PBW basis.
    pub fn right_mult_matrix(&self, e: &Element) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|m| e.mul_basis_left(m).to_dense()).collect();
        Matrix::from_columns(self.field(), self.dim(), &cols).expect("square")
    }

    /// The subalgebra generated by the listed generators (0-based, ascending),
    /// as a presentation in its own right.
    pub fn sub_presentation(&self, indices: &[usize]) -> Result<Qci> {
        let n = self.n();
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= n) {
            return Err(Error::InvalidChainStep(format!("bad index set {indices:?}")));
        }
        let exps = indices.iter().map(|&i| self.0.exponents[i]).collect();
        let mut comms = Vec::new();
        for (s, &i) in indices.iter().enumerate() {
            for &j in &indices[s + 1..] {
                comms.push(self.commutator(i, j).clone());
            }
        }
        Qci::new(self.field(), exps, comms)
    }

    pub fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            n: self.n(),
            exponents: self.0.exponents.clone(),
            commutators: self.0.commutators.iter().map(|c| c.to_string()).collect(),
            field: self.field().spec(),
        }
    }

    pub fn from_doc(doc: &PresentationDoc) -> Result<Qci> {
        if doc.exponents.len() != doc.n {
            return Err(Error::DimensionMismatch { expected: doc.n, found: doc.exponents.len() });
        }
        let field = Field::new(doc.field)?;
        let comms = doc.commutators.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>()?;
        Qci::new(&field, doc.exponents.clone(), comms)
    }

    pub fn element_from_doc(&self, doc: &ElementDoc) -> Result<Element> {
        let mut out = self.zero();
        for (exps, c) in &doc.0 {
            let idx = self
                .monomial_index(exps)
                .ok_or_else(|| Error::Parse(format!("monomial {exps:?} outside the PBW basis")))?;
            let c = self.field().parse_scalar(c)?;
            out = &out + &self.term(idx, c);
        }
        Ok(out)
    }
}

/// JSON form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub n: usize,
    pub exponents: Vec<u32>,
    pub commutators: Vec<String>,
    pub field: FieldSpec,
}

/// JSON form of an element: `(exponent vector, scalar string)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc(pub Vec<(Vec<u32>, String)>);

/// An element of a [`Qci`] as a sparse map from monomial index to nonzero scalar.
#[derive(Clone)]
pub struct Element {
    alg: Qci,
    terms: BTreeMap<usize, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.terms == other.terms
    }
}
impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, self.alg.monomial(*m))?;
        }
        Ok(())
    }
}

impl Element {
    pub fn algebra(&self) -> &Qci {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, idx: usize) -> Scalar {
        self.terms.get(&idx).cloned().unwrap_or_else(|| self.alg.field().zero())
    }

    pub fn to_dense(&self) -> Vector {
        let mut v = vec![self.alg.field().zero(); self.alg.dim()];
        for (m, c) in &self.terms {
            v[*m] = c.clone();
        }
        v
    }

    pub fn to_doc(&self) -> ElementDoc {
        ElementDoc(self.terms.iter().map(|(m, c)| (self.alg.exponents_of(*m), c.to_string())).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return self.alg.zero();
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c * s)).collect();
        Element { alg: self.alg.clone(), terms }
    }

    fn accumulate(terms: &mut BTreeMap<usize, Scalar>, idx: usize, c: Scalar) {
        use std::collections::btree_map::Entry;
        match terms.entry(idx) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self · x^m` for a basis monomial `m`.
    pub fn mul_basis_right(&self, m: usize) -> Element {
        let mut terms = BTreeMap::new();
        for (l, c) in &self.terms {
            if let Some((idx, k)) = self.alg.monomial_product(*l, m) {
                Self::accumulate(&mut terms, idx, c * &k);
            }
        }
        Element { alg: self.alg.clone(), terms }
    }

    /// `x^m · self` for a basis monomial `m`.
    pub fn mul_basis_left(&self, m: usize) -> Element {
        let mut terms = BTreeMap::new();
        for (r, c) in &self.terms {
            if let Some((idx, k)) = self.alg.monomial_product(m, *r) {
                Self::accumulate(&mut terms, idx, c * &k);
            }
        }
        Element { alg: self.alg.clone(), terms }
    }

    /// Product in the algebra.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        if self.alg != other.alg {
            return Err(Error::PresentationMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Element) -> Element {
        let mut terms = BTreeMap::new();
        for (l, c) in &self.terms {
            for (r, d) in &other.terms {
                if let Some((idx, k)) = self.alg.monomial_product(*l, *r) {
                    Self::accumulate(&mut terms, idx, &(c * d) * &k);
                }
            }
        }
        Element { alg: self.alg.clone(), terms }
    }

    /// `m`-fold product; `power(0) = 1`.
    pub fn power(&self, m: u32) -> Element {
        let mut acc = self.alg.one();
        for _ in 0..m {
            if acc.is_zero() {
                break;
            }
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// `Some(d)` if every term has total degree `d`; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = self.alg.total_degree_of(*m);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::InhomogeneousElement),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Whether some monomial in the support contains `x_{i+1}`.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| self.alg.exponents_of(*m)[i] > 0)
    }
}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert!(self.alg == rhs.alg, "adding elements of different presentations");
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            Element::accumulate(&mut terms, *m, c.clone());
        }
        Element { alg: self.alg.clone(), terms }
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert!(self.alg == rhs.alg, "subtracting elements of different presentations");
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            Element::accumulate(&mut terms, *m, -c);
        }
        Element { alg: self.alg.clone(), terms }
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        Element { alg: self.alg.clone(), terms }
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    /// Panics on mismatched presentations; use [`Element::try_mul`] to get an error.
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("multiplying elements of different presentations")
    }
}

/// `Σ_{j=0}^{m} s^j · x · s^{m-j}`.
pub fn symmetric_insertion(s: &Element, x: &Element, m: u32) -> Element {
    let alg = s.algebra();
    let pows: Vec<Element> = (0..=m).map(|j| s.power(j)).collect();
    let mut acc = alg.zero();
    for j in 0..=m as usize {
        acc = &acc + &(&(&pows[j] * x) * &pows[m as usize - j]);
    }
    acc
}

/// Splits `λ = N + σ_α R` with no monomial of `N` containing `x_1`.
///
/// Each term `c·x_1^e m` (`e >= 1`) is rewritten as
/// `α_1^{-1} σ (c x_1^{e-1} m) - α_1^{-1} σ' (c x_1^{e-1} m)` with
/// `σ' = σ - α_1 x_1`; the second part has strictly smaller `x_1`-degree.
pub fn nr_decompose(lambda: &Element, alpha: &[Scalar]) -> Result<(Element, Element)> {
    let alg = lambda.algebra();
    if alpha.len() != alg.n() {
        return Err(Error::DimensionMismatch { expected: alg.n(), found: alpha.len() });
    }
    let a1_inv = alpha[0].inv().ok_or(Error::ZeroLeadingCoordinate)?;
    let mut rest_alpha = alpha.to_vec();
    rest_alpha[0] = alg.field().zero();
    let sigma_rest = alg.sigma(&rest_alpha)?;
    let stride_x1 = alg.0.strides[0];

    let mut n_part = alg.zero();
    let mut r_part = alg.zero();
    let mut pending = lambda.clone();
    while !pending.is_zero() {
        let mut lowered = alg.zero();
        for (m, c) in pending.terms() {
            if alg.exponents_of(m)[0] == 0 {
                n_part = &n_part + &alg.term(m, c.clone());
            } else {
                // x_1^e m' = x_1 · x_1^{e-1} m' with coefficient 1 in normal form.
                lowered = &lowered + &alg.term(m - stride_x1, c * &a1_inv);
            }
        }
        r_part = &r_part + &lowered;
        pending = -&(&sigma_rest * &lowered);
    }
    Ok((n_part, r_part))
}

/// The distinguished tuple `(α_1, 0, 1, 0, 1, ..., 1, 0)` of length `n`.
pub fn distinguished_tuple(field: &Field, n: usize, alpha1: &Scalar) -> Vec<Scalar> {
    (0..n)
        .map(|i| match i {
            0 => alpha1.clone(),
            _ if i % 2 == 0 => field.one(),
            _ => field.zero(),
        })
        .collect()
}

/// Checks `N_{x_1}(τ^i) = ∏_{j=1}^{i} (1 - q^{-j}) · x_{n-1}^i` where
/// `τ = q^{-1}(α_1 x_1 + x_3 + ... + x_{n-3}) + x_{n-1}` and the decomposition
/// is taken with respect to the distinguished tuple `(α_1, 0, 1, ..., 1, 0)`.
pub fn n_part_power_formula_check(alg: &Qci, alpha1: &Scalar, i: u32) -> Result<bool> {
    let n = alg.n();
    if n % 2 == 1 {
        return Err(Error::OddCodimension(n));
    }
    if n < 4 {
        return Err(Error::Config("the power formula needs n >= 4".into()));
    }
    let (a, q) = alg
        .homogeneous_params()
        .ok_or_else(|| Error::Config("the power formula needs a homogeneous presentation".into()))?;
    if i >= a {
        return Err(Error::Config(format!("exponent {i} must be below a = {a}")));
    }
    if alpha1.is_zero() {
        return Err(Error::ZeroLeadingCoordinate);
    }
    let field = alg.field();
    let qi = q.inv().expect("root of unity");
    let alpha = distinguished_tuple(field, n, alpha1);
    let mut tau_coeffs = vec![field.zero(); n];
    tau_coeffs[0] = &qi * alpha1;
    for j in (2..n - 2).step_by(2) {
        tau_coeffs[j] = qi.clone();
    }
    tau_coeffs[n - 2] = field.one();
    let tau = alg.sigma(&tau_coeffs)?;
    let (lhs, _) = nr_decompose(&tau.power(i), &alpha)?;
    let mut c = field.one();
    for j in 1..=i {
        c = &c * &(&field.one() - &qi.pow(j as u64));
    }
    let rhs = alg.x(n - 2).power(i).scale(&c);
    Ok(lhs == rhs)
}

/// The bicharacter `g(z, w) = ∏ q_{i,n+1}^{-w z_i}` used by the twisted tensor product.
pub fn twist_factor(q_col: &[Scalar], z: &[i64], w: i64) -> Scalar {
    let mut acc = q_col[0].one_like();
    for (q, &zi) in q_col.iter().zip(z) {
        let e = -w * zi;
        if e != 0 {
            acc = &acc * &q.powi(e);
        }
    }
    acc
}

/// Presentation of `p1 ⊗^g p2` where `p2` has one generator, glued with the
/// commutators `q_{i,n+1}` (the twist is `g(z, w) = ∏ q_{i,n+1}^{-w z_i}`).
pub fn twisted_tensor(p1: &Qci, p2: &Qci, q_col: &[Scalar]) -> Result<Qci> {
    if p1.field() != p2.field() {
        return Err(Error::FieldMismatch);
    }
    if p2.n() != 1 {
        return Err(Error::Config("the right factor must have a single generator".into()));
    }
    let n = p1.n();
    if q_col.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: q_col.len() });
    }
    let mut exps = p1.exponents().to_vec();
    exps.push(p2.exponents()[0]);
    let mut comms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            comms.push(p1.commutator(i, j).clone());
        }
        comms.push(q_col[i].clone());
    }
    Qci::new(p1.field(), exps, comms)
}

/// Product `(λ_1 ⊗ γ_1)(λ_2 ⊗ γ_2) = g(|λ_2|, |γ_1|) λ_1λ_2 ⊗ γ_1γ_2` on basis
/// monomials; returns `(λ index, γ index, coefficient)` or `None` when zero.
pub fn twisted_monomial_product(
    p1: &Qci,
    p2: &Qci,
    q_col: &[Scalar],
    left: (usize, usize),
    right: (usize, usize),
) -> Option<(usize, usize, Scalar)> {
    let (l, lc) = p1.monomial_product(left.0, right.0)?;
    let (g, gc) = p2.monomial_product(left.1, right.1)?;
    let z: Vec<i64> = p1.exponents_of(right.0).into_iter().map(i64::from).collect();
    let w = p2.exponents_of(left.1)[0] as i64;
    let c = &(&lc * &gc) * &twist_factor(q_col, &z, w);
    Some((l, g, c))
}

/// Compares the twisted structure constants with those of `big` under
/// `λ ⊗ x^c ↦ λ · x_{n+1}^c`, exhaustively over basis pairs.
pub fn twisted_tensor_matches(p1: &Qci, p2: &Qci, q_col: &[Scalar], big: &Qci) -> bool {
    if big.dim() != p1.dim() * p2.dim() || big.n() != p1.n() + 1 {
        return false;
    }
    let embed = |l: usize, g: usize| {
        let mut e = p1.exponents_of(l);
        e.extend(p2.exponents_of(g));
        big.monomial_index(&e).expect("in range")
    };
    let basis: Vec<(usize, usize)> = (0..p1.dim()).flat_map(|l| (0..p2.dim()).map(move |g| (l, g))).collect();
    crate::par::map(&basis, |&left| {
        basis.iter().all(|&right| {
            let twisted = twisted_monomial_product(p1, p2, q_col, left, right);
            let direct = big.monomial_product(embed(left.0, left.1), embed(right.0, right.1));
            match (twisted, direct) {
                (None, None) => true,
                (Some((l, g, c)), Some((idx, d))) => embed(l, g) == idx && c == d,
                _ => false,
            }
        })
    })
    .into_iter()
    .all(|ok| ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam22() -> Qci {
        Qci::homogeneous(&Field::prime(5).unwrap(), 2, 2).unwrap()
    }

    #[test]
    fn dimension_is_product_of_exponents() {
        let f = Field::prime(7).unwrap();
        let q = f.from_i64(3);
        let alg = Qci::new(&f, vec![2, 3, 4], vec![q.clone(), q.clone(), q]).unwrap();
        assert_eq!(alg.dim(), 24);
        assert_eq!(alg.graded_component_basis(0), vec![0]);
    }

    #[test]
    fn x2_x1_picks_up_inverse_commutator() {
        let f = Field::prime(7).unwrap();
        let q = f.from_i64(3);
        let alg = Qci::new(&f, vec![3, 3], vec![q.clone()]).unwrap();
        let prod = &alg.x(1) * &alg.x(0);
        let x1x2 = alg.monomial_index(&[1, 1]).unwrap();
        assert_eq!(prod, alg.term(x1x2, q.inv().unwrap()));
        // and x1 x2 is already normal
        assert_eq!(&alg.x(0) * &alg.x(1), alg.basis_element(x1x2));
    }

    #[test]
    fn truncation_and_identity() {
        let f = Field::prime(5).unwrap();
        let alg = Qci::homogeneous(&f, 1, 2).unwrap();
        assert!((&alg.x(0) * &alg.x(0)).is_zero());
        let l = lam22();
        let y = &l.x(0) + &l.x(1).scale(&l.field().from_i64(3));
        assert_eq!(&l.one() * &y, y);
        assert_eq!(&y * &l.one(), y);
    }

    #[test]
    fn sigma_examples() {
        let l = lam22();
        let f = l.field().clone();
        assert!(l.sigma(&[f.zero(), f.zero()]).unwrap().is_zero());
        assert_eq!(l.sigma(&[f.one(), f.zero()]).unwrap(), l.x(0));
        let s = l.sigma(&[f.from_i64(2), f.from_i64(3)]).unwrap();
        assert_eq!(s, &l.x(0).scale(&f.from_i64(2)) + &l.x(1).scale(&f.from_i64(3)));
    }

    #[test]
    fn sigma_square_vanishes_for_q_minus_one() {
        let l = lam22();
        let f = l.field().clone();
        assert_eq!(l.homogeneous_params().unwrap().1, f.from_i64(-1));
        let s = l.sigma(&[f.one(), f.one()]).unwrap();
        assert!(s.power(2).is_zero());
        assert!(l.x(0).power(2).is_zero());
    }

    #[test]
    fn sigma_square_generic_q() {
        // (x1 + x2)^2 = x1x2 + x2x1 = (1 + q^{-1}) x1x2 by hand expansion
        let f = Field::prime(11).unwrap();
        let q = f.from_i64(3);
        let alg = Qci::new(&f, vec![2, 2], vec![q.clone()]).unwrap();
        let s = alg.sigma(&[f.one(), f.one()]).unwrap();
        let x1x2 = alg.monomial_index(&[1, 1]).unwrap();
        assert_eq!(s.power(2), alg.term(x1x2, &f.one() + &q.inv().unwrap()));
    }

    #[test]
    fn graded_components() {
        let l = lam22();
        let names = |v: Vec<usize>, a: &Qci| v.into_iter().map(|m| a.monomial(m).to_string()).collect::<Vec<_>>();
        assert_eq!(names(l.graded_component_basis(1), &l), vec!["x1", "x2"]);
        assert_eq!(names(l.graded_component_basis(2), &l), vec!["x1x2"]);
        let l3 = Qci::homogeneous(&Field::prime(5).unwrap(), 3, 2).unwrap();
        assert_eq!(names(l3.graded_component_basis(2), &l3), vec!["x1x2", "x1x3", "x2x3"]);
    }

    #[test]
    fn nr_decompose_examples() {
        let l = lam22();
        let f = l.field().clone();
        let alpha = [f.one(), f.zero()];
        let (n, r) = nr_decompose(&l.x(1), &alpha).unwrap();
        assert_eq!((n, r), (l.x(1), l.zero()));
        let (n, r) = nr_decompose(&l.x(0), &alpha).unwrap();
        assert_eq!((n, r), (l.zero(), l.one()));
        let x1x2 = l.basis_element(l.monomial_index(&[1, 1]).unwrap());
        let (n, r) = nr_decompose(&x1x2, &alpha).unwrap();
        assert_eq!((n, r), (l.zero(), l.x(1)));
        assert_eq!(nr_decompose(&x1x2, &[f.zero(), f.one()]), Err(Error::ZeroLeadingCoordinate));
    }

    #[test]
    fn power_formula_small_cases() {
        let f = Field::prime(5).unwrap();
        let l = Qci::homogeneous(&f, 4, 2).unwrap();
        assert!(n_part_power_formula_check(&l, &f.one(), 0).unwrap());
        assert!(n_part_power_formula_check(&l, &f.one(), 1).unwrap());
        // direct: N(-x1 + x3) = 2 x3 for σ = x1 + x3
        let tau = &l.x(0).scale(&f.from_i64(-1)) + &l.x(2);
        let (n, _) = nr_decompose(&tau, &distinguished_tuple(&f, 4, &f.one())).unwrap();
        assert_eq!(n, l.x(2).scale(&f.from_i64(2)));
    }

    #[test]
    fn twisted_tensor_of_two_truncated_rings() {
        let f = Field::prime(5).unwrap();
        let p = Qci::homogeneous(&f, 1, 2).unwrap();
        let q = f.from_i64(-1);
        let big = twisted_tensor(&p, &p, std::slice::from_ref(&q)).unwrap();
        assert_eq!(big, Qci::homogeneous(&f, 2, 2).unwrap());
        assert!(twisted_tensor_matches(&p, &p, std::slice::from_ref(&q), &big));
        // (1 ⊗ x2)(x1 ⊗ 1) = q^{-1} (x1 ⊗ x2)
        let (l, g, c) = twisted_monomial_product(&p, &p, std::slice::from_ref(&q), (0, 1), (1, 0)).unwrap();
        assert_eq!((l, g), (1, 1));
        assert_eq!(c, q.inv().unwrap());
        assert!(twist_factor(&[q], &[0], 5).is_one());
    }

    #[test]
    fn doc_round_trip() {
        let f = Field::cyclotomic(3).unwrap();
        let l = Qci::homogeneous(&f, 3, 3).unwrap();
        let doc = l.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let back = Qci::from_doc(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, l);
        let e = &l.x(0) + &l.x(2).scale(&f.generator());
        assert_eq!(l.element_from_doc(&e.to_doc()).unwrap(), e);
    }
}
