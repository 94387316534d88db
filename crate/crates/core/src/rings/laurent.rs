use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::cospoly::{chebyshev_t, CosPoly};
use super::cyclotomic::{CyclotomicElement, CyclotomicRing};
use super::{BigIntJson, CommRing};
use crate::error::{Error, Result};

/// Integer Laurent polynomial in `z = e^{iθ}`.
///
/// Zero coefficients are never stored; the zero polynomial is the empty map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c · z^exp`
    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `z^k + z^{-k}`, i.e. `2 cos kθ`.
    pub fn two_cos(k: i64) -> Self {
        if k == 0 {
            return Self::constant(2);
        }
        let mut p = Self::monomial(k, 1);
        p.add_term(-k, &BigInt::one());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest absolute exponent, 0 for constants and zero.
    pub fn span(&self) -> i64 {
        self.terms.keys().map(|e| e.abs()).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    fn sub_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot -= c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Complex conjugation on the unit circle: `z ↦ z^{-1}`.
    pub fn conjugate(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// True iff the polynomial equals its conjugate.
    pub fn is_real(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    fn require_real(&self) -> Result<()> {
        if self.is_real() {
            Ok(())
        } else {
            Err(Error::NotReal(self.to_string()))
        }
    }

    /// Rewrites a self-conjugate polynomial in `c = cos θ` using
    /// `z^k + z^{-k} = 2 T_k(c)`.
    pub fn to_cos_poly(&self) -> Result<CosPoly> {
        self.require_real()?;
        let mut acc = CosPoly::constant(self.coeff(0));
        for (e, c) in self.terms.range(1..) {
            let t = chebyshev_t(*e as usize).scale(&(c * 2));
            acc = acc + t;
        }
        Ok(acc)
    }

    /// `Σ c_e cos(eθ)` in double precision; the input must be self-conjugate.
    pub fn eval_numeric(&self, theta: f64) -> Result<f64> {
        self.require_real()?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * (*e as f64 * theta).cos())
            .sum())
    }

    /// Value at `z = e^{iθ}` as a complex number; no reality requirement.
    pub fn eval_complex(&self, theta: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), *e as f64 * theta))
            .sum()
    }

    /// Substitutes `z ↦ ζ_n^l` and reduces modulo `Φ_n`.
    ///
    /// Exponents are mapped through `e·l mod n` first, so no large
    /// intermediate degrees appear.
    pub fn eval_at_root_of_unity(&self, l: i64, n: u64) -> Result<CyclotomicElement> {
        let ring = CyclotomicRing::new(n)?;
        let mut dense = vec![BigInt::zero(); n as usize];
        for (e, c) in &self.terms {
            let k = ((*e as i128 * l as i128).rem_euclid(n as i128)) as usize;
            dense[k] += c;
        }
        Ok(ring.reduce(dense))
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest exponent first, e.g. `z^3 - 2 + z^-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "z")?,
                1 => write!(f, "{mag}z")?,
                _ if unit => write!(f, "z^{e}")?,
                _ => write!(f, "{mag}z^{e}")?,
            }
        }
        Ok(())
    }
}

/// Sorted `[exponent, coefficient]` pairs.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, BigIntJson(c)))?;
        }
        seq.end()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.sub_term(*e, c);
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

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
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

/// `ℤ[z, z^{-1}]` as a [`CommRing`] context.
#[derive(Debug, Clone, Copy, Default)]
pub struct LaurentRing;

impl CommRing for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, a: &mut LaurentPoly, b: &LaurentPoly) {
        *a += b;
    }
    fn sub_assign(&self, a: &mut LaurentPoly, b: &LaurentPoly) {
        *a -= b;
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a * b
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a
    }
    fn mul_add_assign(&self, acc: &mut LaurentPoly, a: &LaurentPoly, b: &LaurentPoly) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                acc.add_term(ea + eb, &(ca * cb));
            }
        }
    }
}
