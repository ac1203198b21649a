//! Exact coefficient fields.
//!
//! Two families are supported: prime fields `F_p` (residues stored as `u64`)
//! and cyclotomic fields `Q(zeta_a)`, whose elements are coefficient vectors of
//! length `phi(a)` over arbitrary-precision rationals, reduced modulo the
//! `a`-th cyclotomic polynomial. Every operation is exact.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which field the computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u64),
    Cyclotomic(u32),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "p:{p}"),
            FieldSpec::Cyclotomic(a) => write!(f, "cyclo:{a}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidField(s.to_string());
        let (kind, value) = s.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "p" => {
                let p: u64 = value.parse().map_err(|_| bad())?;
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                if p >= 1 << 62 {
                    return Err(bad());
                }
                Ok(FieldSpec::Prime(p))
            }
            "cyclo" => {
                let a: u32 = value.parse().map_err(|_| bad())?;
                if !(2..=1000).contains(&a) {
                    return Err(bad());
                }
                Ok(FieldSpec::Cyclotomic(a))
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn euler_phi(n: u32) -> usize {
    let mut result = n as u64;
    for p in prime_factors(n as u64) {
        result = result / p * (p - 1);
    }
    result as usize
}

/// Coefficients (low to high) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1);
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd] / lead;
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Reduction data for `Q(zeta_a)`.
#[derive(Debug)]
pub struct CycloData {
    order: u32,
    phi: usize,
    /// Monic modulus, low to high, length `phi + 1`.
    modulus: Vec<BigInt>,
}

impl CycloData {
    fn new(order: u32) -> Self {
        let phi = euler_phi(order);
        let modulus: Vec<BigInt> = cyclotomic_polynomial(order).into_iter().map(BigInt::from).collect();
        debug_assert_eq!(modulus.len(), phi + 1);
        CycloData { order, phi, modulus }
    }

    fn reduce(&self, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let phi = self.phi;
        while coeffs.len() > phi {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - phi;
            for (j, m) in self.modulus[..phi].iter().enumerate() {
                if !m.is_zero() {
                    let t = &top * BigRational::from_integer(m.clone());
                    coeffs[shift + j] -= t;
                }
            }
        }
        coeffs.resize(phi, BigRational::zero());
        coeffs
    }

    fn mul(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); 2 * self.phi - 1];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    out[i + j] += xi * yj;
                }
            }
        }
        self.reduce(out)
    }

    fn monomial(&self, k: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = BigRational::one();
        self.reduce(v)
    }

    /// Inverse via the multiplication matrix of `x` on the power basis.
    fn inv(&self, x: &[BigRational]) -> Option<Vec<BigRational>> {
        let n = self.phi;
        // Column j is x * zeta^j.
        let cols: Vec<Vec<BigRational>> = (0..n).map(|j| self.mul(x, &self.monomial(j))).collect();
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..n).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=n {
                        let t = &f * &aug[col][c];
                        aug[r][c] -= t;
                    }
                }
            }
        }
        Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
    }
}

#[derive(Debug)]
struct FieldInner {
    spec: FieldSpec,
    cyclo: Option<Arc<CycloData>>,
}

/// A coefficient field: the context that creates scalars.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let cyclo = match spec {
            FieldSpec::Prime(p) => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                None
            }
            FieldSpec::Cyclotomic(a) => {
                if a < 2 {
                    return Err(Error::InvalidField(spec.to_string()));
                }
                Some(Arc::new(CycloData::new(a)))
            }
        };
        Ok(Field(Arc::new(FieldInner { spec, cyclo })))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Field::new(FieldSpec::Prime(p))
    }

    pub fn cyclotomic(a: u32) -> Result<Self> {
        Field::new(FieldSpec::Cyclotomic(a))
    }

    pub fn spec(&self) -> FieldSpec {
        self.0.spec
    }

    pub fn characteristic(&self) -> u64 {
        match self.0.spec {
            FieldSpec::Prime(p) => p,
            FieldSpec::Cyclotomic(_) => 0,
        }
    }

    /// Degree of the field over its prime field.
    pub fn degree(&self) -> usize {
        self.0.cyclo.as_ref().map_or(1, |c| c.phi)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match (&self.0.spec, &self.0.cyclo) {
            (FieldSpec::Prime(p), _) => Scalar::Mod { value: v.rem_euclid(*p as i64) as u64, p: *p },
            (_, Some(c)) => {
                let mut coeffs = vec![BigRational::zero(); c.phi];
                coeffs[0] = BigRational::from_integer(BigInt::from(v));
                Scalar::Cyclo(CycloElem { field: c.clone(), coeffs })
            }
            _ => unreachable!(),
        }
    }

    /// Rational scalar `num/den`. In `F_p` the denominator must be invertible.
    pub fn from_ratio(&self, num: i64, den: i64) -> Option<Scalar> {
        if den == 0 {
            return None;
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        Some(&n * &d.inv()?)
    }

    /// Element given by its coordinates in the power basis of `Q(zeta_a)`.
    pub fn from_coefficients(&self, coeffs: Vec<BigRational>) -> Result<Scalar> {
        let c = self.0.cyclo.as_ref().ok_or(Error::FieldMismatch)?;
        let coeffs = c.reduce(coeffs);
        Ok(Scalar::Cyclo(CycloElem { field: c.clone(), coeffs }))
    }

    /// The distinguished generator: `zeta_a` for cyclotomic fields, the
    /// smallest primitive root for prime fields.
    pub fn generator(&self) -> Scalar {
        match (&self.0.spec, &self.0.cyclo) {
            (FieldSpec::Prime(p), _) => Scalar::Mod { value: smallest_primitive_root(*p), p: *p },
            (_, Some(c)) => Scalar::Cyclo(CycloElem { field: c.clone(), coeffs: c.monomial(1) }),
            _ => unreachable!(),
        }
    }

    /// A primitive `a`-th root of unity.
    ///
    /// For `F_p` this is `g^((p-1)/a)` with `g` the smallest primitive root.
    /// For `Q(zeta_b)` it is the appropriate power of `zeta_b` (or `-zeta_b`).
    pub fn primitive_root_of_unity(&self, a: u64) -> Result<Scalar> {
        let err = || Error::NoPrimitiveRoot { order: a, field: self.spec().to_string() };
        if a < 2 {
            return Err(err());
        }
        match self.0.spec {
            FieldSpec::Prime(p) => {
                if (p - 1) % a != 0 {
                    return Err(err());
                }
                let g = self.generator();
                Ok(g.pow((p - 1) / a))
            }
            FieldSpec::Cyclotomic(b) => {
                let b = b as u64;
                let z = self.generator();
                if b.is_multiple_of(a) {
                    Ok(z.pow(b / a))
                } else if b % 2 == 1 && (2 * b).is_multiple_of(a) {
                    // -zeta_b has order 2b when b is odd.
                    Ok((-z).pow(2 * b / a))
                } else {
                    Err(err())
                }
            }
        }
    }

    /// Uniform sample: over `F_p` uniform on residues, over `Q(zeta_a)`
    /// uniform on integer coefficient vectors in `[-bound, bound]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        match (&self.0.spec, &self.0.cyclo) {
            (FieldSpec::Prime(p), _) => Scalar::Mod { value: rng.gen_range(0..*p), p: *p },
            (_, Some(c)) => {
                let coeffs = (0..c.phi)
                    .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
                    .collect();
                Scalar::Cyclo(CycloElem { field: c.clone(), coeffs })
            }
            _ => unreachable!(),
        }
    }

    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        loop {
            let s = self.sample(rng, bound);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Parses the canonical string form produced by `Display`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad scalar `{s}` for {}", self.spec()));
        match (&self.0.spec, &self.0.cyclo) {
            (FieldSpec::Prime(_), _) => {
                let v: i64 = s.parse().map_err(|_| bad())?;
                Ok(self.from_i64(v))
            }
            (_, Some(c)) => {
                let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
                let coeffs: Vec<BigRational> =
                    inner.split(',').map(|t| t.trim().parse::<BigRational>().map_err(|_| bad())).collect::<Result<_>>()?;
                if coeffs.len() != c.phi {
                    return Err(bad());
                }
                Ok(Scalar::Cyclo(CycloElem { field: c.clone(), coeffs }))
            }
            _ => unreachable!(),
        }
    }
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime field has a primitive root")
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[derive(Clone, Debug)]
pub struct CycloElem {
    field: Arc<CycloData>,
    coeffs: Vec<BigRational>,
}

impl CycloElem {
    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }
}

/// An exact field element. Two scalars are equal iff their canonical data
/// are equal; mixing fields in one operation is a programming error and panics.
#[derive(Clone, Debug)]
pub enum Scalar {
    Mod { value: u64, p: u64 },
    Cyclo(CycloElem),
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Mod { value: a, p: p1 }, Scalar::Mod { value: b, p: p2 }) => a == b && p1 == p2,
            (Scalar::Cyclo(x), Scalar::Cyclo(y)) => x.field.order == y.field.order && x.coeffs == y.coeffs,
            _ => false,
        }
    }
}
impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Mod { value, p } => {
                value.hash(state);
                p.hash(state);
            }
            Scalar::Cyclo(x) => {
                x.field.order.hash(state);
                x.coeffs.hash(state);
            }
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Cyclo(x) => x.coeffs.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Cyclo(x) => x.coeffs[0].is_one() && x.coeffs[1..].iter().all(Zero::is_zero),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Mod { p, .. } => Scalar::Mod { value: 0, p: *p },
            Scalar::Cyclo(x) => Scalar::Cyclo(CycloElem {
                field: x.field.clone(),
                coeffs: vec![BigRational::zero(); x.field.phi],
            }),
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Mod { p, .. } => Scalar::Mod { value: 1 % *p, p: *p },
            Scalar::Cyclo(x) => {
                let mut coeffs = vec![BigRational::zero(); x.field.phi];
                coeffs[0] = BigRational::one();
                Scalar::Cyclo(CycloElem { field: x.field.clone(), coeffs })
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Mod { value, p } => Some(Scalar::Mod { value: pow_mod(*value, p - 2, *p), p: *p }),
            Scalar::Cyclo(x) => {
                let coeffs = x.field.inv(&x.coeffs)?;
                Some(Scalar::Cyclo(CycloElem { field: x.field.clone(), coeffs }))
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        if let Scalar::Mod { value, p } = self {
            return Scalar::Mod { value: pow_mod(*value, e, *p), p: *p };
        }
        let mut acc = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents invert. Panics on `0^(-k)`.
    pub fn powi(&self, e: i64) -> Scalar {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().expect("negative power of zero").pow(e.unsigned_abs())
        }
    }

    /// Multiplicative order if finite and at most `limit`.
    pub fn multiplicative_order(&self, limit: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }
}

fn field_mismatch() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                let s = a + b;
                Scalar::Mod { value: if s >= *p { s - p } else { s }, p: *p }
            }
            (Scalar::Cyclo(x), Scalar::Cyclo(y)) if x.field.order == y.field.order => Scalar::Cyclo(CycloElem {
                field: x.field.clone(),
                coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect(),
            }),
            _ => field_mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod { value: if a >= b { a - b } else { a + p - b }, p: *p }
            }
            (Scalar::Cyclo(x), Scalar::Cyclo(y)) if x.field.order == y.field.order => Scalar::Cyclo(CycloElem {
                field: x.field.clone(),
                coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a - b).collect(),
            }),
            _ => field_mismatch(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod { value: mul_mod(*a, *b, *p), p: *p }
            }
            (Scalar::Cyclo(x), Scalar::Cyclo(y)) if x.field.order == y.field.order => {
                if x.field.phi == 1 {
                    return Scalar::Cyclo(CycloElem { field: x.field.clone(), coeffs: vec![&x.coeffs[0] * &y.coeffs[0]] });
                }
                Scalar::Cyclo(CycloElem { field: x.field.clone(), coeffs: x.field.mul(&x.coeffs, &y.coeffs) })
            }
            _ => field_mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, p } => Scalar::Mod { value: if *value == 0 { 0 } else { p - value }, p: *p },
            Scalar::Cyclo(x) => Scalar::Cyclo(CycloElem {
                field: x.field.clone(),
                coeffs: x.coeffs.iter().map(|c| -c).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Cyclo(x) => {
                write!(f, "(")?;
                for (i, c) in x.coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    if c.denom().is_one() {
                        write!(f, "{}", c.numer())?;
                    } else {
                        write!(f, "{}/{}", c.numer(), c.denom())?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl Scalar {
    /// Largest absolute numerator or denominator; 0 for prime-field elements.
    pub fn height_bits(&self) -> u64 {
        match self {
            Scalar::Mod { .. } => 0,
            Scalar::Cyclo(x) => x
                .coeffs
                .iter()
                .map(|c| c.numer().abs().bits().max(c.denom().bits()))
                .max()
                .unwrap_or(0),
        }
    }
}
