//! Sparse Laurent polynomials in `v = q^{1/2}` with integer coefficients.
//!
//! Exponents are stored as powers of `v`, so `q^k` lives at exponent `2k` and
//! half-integral powers of `q` are exact. The bar involution sends `v` to
//! `v^{-1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exponent of `v = q^{1/2}`. `HalfExp(2)` is `q^1`, `HalfExp(1)` is `q^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfExp(pub i64);

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp(0);

    /// The exponent of `q^k`.
    pub fn from_q(k: i64) -> HalfExp {
        HalfExp(2 * k)
    }

    /// Returns `Some(k)` when this is the integral power `q^k`.
    pub fn as_q(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 + rhs.0)
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 - rhs.0)
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp(-self.0)
    }
}

/// Formats as a power of `q`: `3`, `-1`, `1/2`, `-3/2`.
impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_q() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

/// Degree of a Laurent polynomial; `None` is the degree `-inf` of zero.
pub type Degree = Option<HalfExp>;

/// A finitely supported Laurent polynomial `sum c_k v^k` with `c_k` in `Z`.
///
/// No zero coefficient is ever stored, so the empty map is the zero polynomial
/// and structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::mono(HalfExp::ZERO, 1)
    }

    /// `c * v^e`.
    pub fn mono(e: HalfExp, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e.0, c);
        }
        LaurentPoly { terms }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::mono(HalfExp::from_q(k), 1)
    }

    /// Builds a polynomial from `(v-exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(HalfExp(e), c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (HalfExp, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (HalfExp(e), c))
    }

    pub fn coeff(&self, e: HalfExp) -> BigInt {
        self.terms.get(&e.0).cloned().unwrap_or_default()
    }

    pub fn deg(&self) -> Degree {
        self.terms.keys().next_back().map(|&e| HalfExp(e))
    }

    /// Smallest exponent with a nonzero coefficient, i.e. the largest power of
    /// `v` dividing the polynomial. `None` for zero.
    pub fn min_exp(&self) -> Degree {
        self.terms.keys().next().map(|&e| HalfExp(e))
    }

    pub fn add_term(&mut self, e: HalfExp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.0).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e.0);
        }
    }

    /// `v^k * self`.
    pub fn shift(&self, k: HalfExp) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k.0, c.clone())).collect(),
        }
    }

    /// `q^k * self`.
    pub fn shift_q(&self, k: i64) -> Self {
        self.shift(HalfExp::from_q(k))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect(),
        }
    }

    /// Multiplies by `+1` or `-1`.
    pub fn signed(&self, sign: i32) -> Self {
        if sign >= 0 {
            self.clone()
        } else {
            -self
        }
    }

    /// The bar involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Keeps exactly the terms with exponent strictly above `zeta`.
    pub fn trunc_upper(&self, zeta: HalfExp) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .range(zeta.0.saturating_add(1)..)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Keeps exactly the terms with exponent strictly below `zeta`.
    pub fn trunc_lower(&self, zeta: HalfExp) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .range(..zeta.0)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// True when every exponent is a multiple of `step` (in `v` units).
    pub fn exponents_divisible_by(&self, step: i64) -> bool {
        if step == 0 {
            return self.terms.keys().all(|&e| e == 0);
        }
        self.terms.keys().all(|&e| e % step == 0)
    }

    /// `[v-exponent, coefficient]` pairs; coefficients that do not fit an
    /// `i64` are rendered as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&e, c)| serde_json::json!([e, coeff_json(c)]))
                .collect(),
        )
    }
}

fn coeff_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::from(c.to_string()),
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::mono(HalfExp::ZERO, c)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(HalfExp(e), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(HalfExp(e), -c);
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(HalfExp(a + b), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    if e % 2 != 0 {
        write!(f, "q^({e}/2)")
    } else if e == 2 {
        write!(f, "q")
    } else {
        write!(f, "q^{}", e / 2)
    }
}

/// Canonical text form, increasing exponents: `1 - 2*q + q^2`, `q^(-1/2)`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_power(f, e)?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            seq.serialize_element(&(e, coeff_json(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<(i64, serde_json::Value)> = Vec::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in raw {
            let c: BigInt = match &c {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| serde::de::Error::custom("coefficient is not an integer"))?,
                serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom)?,
                _ => return Err(serde::de::Error::custom("coefficient must be a number or string")),
            };
            p.add_term(HalfExp(e), c);
        }
        Ok(p)
    }
}
