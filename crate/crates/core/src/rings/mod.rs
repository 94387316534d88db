//! Exact commutative rings used for characteristic polynomials.
//!
//! Every matrix entry of `H_θ` is `0`, `1`, `z` or `z^{-1}` with `z = e^{iθ}`,
//! so the characteristic polynomial has coefficients in `ℤ[z, z^{-1}]`
//! ([`LaurentPoly`]). Self-conjugate Laurent polynomials convert to
//! polynomials in `cos θ` ([`CosPoly`]); substituting a root of unity lands in
//! `ℤ[x]/Φ_n(x)` ([`CyclotomicElement`]).

mod angle;
mod cospoly;
mod cyclotomic;
mod laurent;

pub use angle::Angle;
pub use cospoly::{chebyshev_t, CosPoly};
pub use cyclotomic::{cyclotomic_poly, euler_phi, CyclotomicElement, CyclotomicRing};
pub use laurent::{LaurentPoly, LaurentRing};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

/// A commutative ring given by a context value, so that rings whose elements
/// need shared data (a cyclotomic modulus) and plain value rings share the
/// same generic algorithms.
pub trait CommRing {
    type Elem: Clone + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem);
    fn sub_assign(&self, a: &mut Self::Elem, b: &Self::Elem);
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }
}

/// Integers are emitted as JSON numbers when they fit in 64 bits and as
/// decimal strings otherwise.
pub(crate) fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) struct BigIntJson<'a>(pub &'a BigInt);

impl serde::Serialize for BigIntJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}
