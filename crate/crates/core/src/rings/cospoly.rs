use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::BigIntJson;

/// Integer polynomial in `c = cos θ`, constant term first.
///
/// The coefficient vector is trimmed: its last entry is nonzero unless the
/// polynomial is zero, in which case the vector is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CosPoly {
    coeffs: Vec<BigInt>,
}

impl CosPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = CosPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Horner evaluation at `c`.
    pub fn eval(&self, c: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * c + a.to_f64().unwrap_or(f64::NAN))
    }
}

/// Chebyshev polynomial of the first kind: `T_k(cos θ) = cos kθ`.
pub fn chebyshev_t(k: usize) -> CosPoly {
    let x = CosPoly::from_i64(&[0, 1]);
    let two_x = CosPoly::from_i64(&[0, 2]);
    let mut prev = CosPoly::constant(1);
    if k == 0 {
        return prev;
    }
    let mut cur = x;
    for _ in 1..k {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

impl Add<&CosPoly> for &CosPoly {
    type Output = CosPoly;
    fn add(self, rhs: &CosPoly) -> CosPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        CosPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&CosPoly> for &CosPoly {
    type Output = CosPoly;
    fn sub(self, rhs: &CosPoly) -> CosPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        CosPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&CosPoly> for &CosPoly {
    type Output = CosPoly;
    fn mul(self, rhs: &CosPoly) -> CosPoly {
        if self.is_zero() || rhs.is_zero() {
            return CosPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CosPoly::from_coeffs(out)
    }
}

impl Add for CosPoly {
    type Output = CosPoly;
    fn add(self, rhs: CosPoly) -> CosPoly {
        &self + &rhs
    }
}

impl Sub for CosPoly {
    type Output = CosPoly;
    fn sub(self, rhs: CosPoly) -> CosPoly {
        &self - &rhs
    }
}

impl Neg for CosPoly {
    type Output = CosPoly;
    fn neg(self) -> CosPoly {
        CosPoly::from_coeffs(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for CosPoly {
    /// Highest degree first in the variable `c`, e.g. `-8c^3 + 6c`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            match (first, a.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "c")?,
                1 => write!(f, "{mag}c")?,
                _ if unit => write!(f, "c^{i}")?,
                _ => write!(f, "{mag}c^{i}")?,
            }
        }
        Ok(())
    }
}

/// Coefficient array, constant term first.
impl Serialize for CosPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&BigIntJson(c))?;
        }
        seq.end()
    }
}
