use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{BigIntJson, CommRing};
use crate::error::{Error, Result};

type Memo = RwLock<HashMap<u64, Arc<Vec<BigInt>>>>;

fn memo() -> &'static Memo {
    static TABLE: OnceLock<Memo> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `n`-th cyclotomic polynomial, constant term first.
///
/// Computed as `(x^n - 1) / ∏_{d | n, d < n} Φ_d(x)` and memoized.
pub fn cyclotomic_poly(n: u64) -> Result<Arc<Vec<BigInt>>> {
    if n == 0 {
        return Err(Error::invalid("cyclotomic index must be positive"));
    }
    if let Some(p) = memo().read().expect("cyclotomic memo poisoned").get(&n) {
        return Ok(Arc::clone(p));
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi_d = cyclotomic_poly(d)?;
        num = exact_div_monic(&num, &phi_d);
    }
    let poly = Arc::new(num);
    memo()
        .write()
        .expect("cyclotomic memo poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    Ok(poly)
}

/// Quotient of `num` by the monic `den`; the remainder must be zero.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (k, dk) in den.iter().enumerate() {
            rem[i + k] -= &c * dk;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// An element of `ℤ[x]/Φ_n(x)` in the power basis `1, x, …, x^{φ(n)-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    n: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicElement {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Exactly `φ(n)` coefficients.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Value at `x = e^{2πi/n}`.
    pub fn to_complex(&self) -> Complex64 {
        let step = 2.0 * std::f64::consts::PI / self.n as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), step * k as f64))
            .sum()
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " mod Φ_{}", self.n)
    }
}

/// `{"n": …, "coeffs": […]}` with the constant term first.
impl Serialize for CyclotomicElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<BigIntJson<'_>> = self.coeffs.iter().map(BigIntJson).collect();
        let mut st = s.serialize_struct("CyclotomicElement", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// `ℤ[x]/Φ_n(x)` as a [`CommRing`] context.
#[derive(Debug, Clone)]
pub struct CyclotomicRing {
    n: u64,
    modulus: Arc<Vec<BigInt>>,
    /// Nonzero non-leading coefficients of `Φ_n`.
    sparse_tail: Vec<(usize, BigInt)>,
}

impl CyclotomicRing {
    pub fn new(n: u64) -> Result<Self> {
        let modulus = cyclotomic_poly(n)?;
        let d = modulus.len() - 1;
        let sparse_tail = modulus[..d]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        Ok(CyclotomicRing {
            n,
            modulus,
            sparse_tail,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn root_power(&self, k: i64) -> CyclotomicElement {
        let e = (k as i128).rem_euclid(self.n as i128) as usize;
        let mut dense = vec![BigInt::zero(); e + 1];
        dense[e] = BigInt::one();
        self.reduce(dense)
    }

    pub fn from_int(&self, c: impl Into<BigInt>) -> CyclotomicElement {
        self.reduce(vec![c.into()])
    }

    /// Remainder of a dense polynomial (constant first) modulo `Φ_n`.
    pub fn reduce(&self, mut dense: Vec<BigInt>) -> CyclotomicElement {
        let d = self.degree();
        for i in (d..dense.len()).rev() {
            if dense[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut dense[i]);
            for (k, m) in &self.sparse_tail {
                dense[i - d + k] -= &c * m;
            }
        }
        dense.resize(d, BigInt::zero());
        CyclotomicElement {
            n: self.n,
            coeffs: dense,
        }
    }
}

impl CommRing for CyclotomicRing {
    type Elem = CyclotomicElement;

    fn zero(&self) -> CyclotomicElement {
        CyclotomicElement {
            n: self.n,
            coeffs: vec![BigInt::zero(); self.degree()],
        }
    }

    fn one(&self) -> CyclotomicElement {
        self.from_int(1)
    }

    fn is_zero(&self, a: &CyclotomicElement) -> bool {
        a.is_zero()
    }

    fn add_assign(&self, a: &mut CyclotomicElement, b: &CyclotomicElement) {
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
    }

    fn sub_assign(&self, a: &mut CyclotomicElement, b: &CyclotomicElement) {
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
    }

    fn mul(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        let d = self.degree();
        let mut prod = vec![BigInt::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    fn neg(&self, a: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement {
            n: self.n,
            coeffs: a.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_poly(1).unwrap()), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_poly(2).unwrap()), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_poly(9).unwrap()), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(ints(&cyclotomic_poly(12).unwrap()), vec![1, 0, -1, 0, 1]);
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn phi_12_by_direct_division() {
        // x^12 - 1 divided by Φ_1 Φ_2 Φ_3 Φ_4 Φ_6 written out by hand
        let mut num: Vec<BigInt> = vec![BigInt::from(-1)];
        num.extend(std::iter::repeat_n(BigInt::zero(), 11));
        num.push(BigInt::one());
        let divisors: [&[i64]; 5] = [&[-1, 1], &[1, 1], &[1, 1, 1], &[1, 0, 1], &[1, -1, 1]];
        for d in divisors {
            let d: Vec<BigInt> = d.iter().map(|&c| BigInt::from(c)).collect();
            num = exact_div_monic(&num, &d);
        }
        assert_eq!(ints(&num), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn primes_give_geometric_series() {
        for p in (2u64..=100).filter(|&p| (2..p).all(|d| p % d != 0)) {
            let phi = cyclotomic_poly(p).unwrap();
            assert_eq!(phi.len() as u64, p);
            assert!(phi.iter().all(One::is_one), "p = {p}");
        }
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..=60 {
            assert_eq!(cyclotomic_poly(n).unwrap().len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn roots_of_unity_multiply() {
        let r = CyclotomicRing::new(18).unwrap();
        let z = r.root_power(1);
        let mut p = r.one();
        for _ in 0..18 {
            p = r.mul(&p, &z);
        }
        assert_eq!(p, r.one());
        assert_eq!(r.mul(&r.root_power(5), &r.root_power(-5)), r.one());
        // ζ_18^9 = -1
        assert_eq!(r.root_power(9), r.from_int(-1));
    }

    #[test]
    fn complex_value_matches_reduction() {
        let r = CyclotomicRing::new(9).unwrap();
        for k in 0..9 {
            let v = r.root_power(k).to_complex();
            let th = 2.0 * std::f64::consts::PI * k as f64 / 9.0;
            assert!((v - Complex64::from_polar(1.0, th)).norm() < 1e-12);
        }
    }

    #[test]
    fn concurrent_memo_access() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || cyclotomic_poly(30 + i).unwrap()))
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            let p = h.join().unwrap();
            assert_eq!(p.len() as u64 - 1, euler_phi(30 + i as u64));
        }
    }
}
