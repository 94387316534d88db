//! Exact vanishing test for the odd characteristic-polynomial coefficients at
//! `z = ζ_{2m}^l`, by reduction modulo primes that split completely.
//!
//! The odd coefficients `a_j(ζ)` are real algebraic integers, i.e. they live
//! in `ℤ[ζ + ζ^{-1}]`, of degree `d = φ(2m)/2` (or 1). Take primes
//! `p ≡ 1 (mod 2m)` and a primitive `2m`-th root `ω ∈ F_p`. The maps
//! `ζ ↦ ω^k`, `k` ranging over units modulo `2m` up to sign, give every ring
//! map of `ℤ[ζ + ζ^{-1}]` onto `F_p`, so all of them vanishing on `α` means
//! `α ∈ p·ℤ[ζ + ζ^{-1}]`.
//!
//! If `α ≠ 0` lies in `P·ℤ[ζ + ζ^{-1}]` for a product `P` of such primes, then
//! `P^d` divides the nonzero integer `N(α)`, so `P ≤ max_σ |σ(α)|`. Every
//! conjugate of `a_j` is `±e_j` of the eigenvalues of some `H_θ` on the same
//! underlying graph, and Maclaurin's inequality with `Σ λ² = 2|E|` gives
//! `|e_j| ≤ C(n, j) (2|E|/n)^{j/2}`. Once `P` exceeds that bound, vanishing
//! modulo every prime is a proof of exact vanishing.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::berkowitz::{charpoly, SparseMatrix};
use crate::graph::{MixedGraph, PairKind};
use crate::rings::{Angle, CommRing};

/// `F_p` for a prime below `2^31`, so products fit in `u64`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PrimeField {
    p: u64,
}

impl CommRing for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add_assign(&self, a: &mut u64, b: &u64) {
        *a += b;
        if *a >= self.p {
            *a -= self.p;
        }
    }
    fn sub_assign(&self, a: &mut u64, b: &u64) {
        *a = if *a >= *b { *a - b } else { *a + self.p - b };
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul_add_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = (*acc + a * b) % self.p;
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A primitive `order`-th root of unity modulo the prime `p`, where
/// `order | p - 1`.
fn primitive_root_of_unity(p: u64, order: u64) -> u64 {
    let qs = prime_factors(order);
    (2..p)
        .map(|g| pow_mod(g, (p - 1) / order, p))
        .find(|&w| qs.iter().all(|q| pow_mod(w, order / q, p) != 1))
        .expect("F_p^* is cyclic")
}

/// Primes `p ≡ 1 (mod order)` below `2^31`, largest first.
fn split_primes(order: u64) -> impl Iterator<Item = u64> {
    const TOP: u64 = 1 << 31;
    let start = (TOP - 2) / order * order + 1;
    (0..)
        .map(move |i| start - i * order)
        .take_while(move |&p| p > order)
        .filter(|&p| primal_check::miller_rabin(p))
}

/// `max_j C(n, j)^2 (2|E|)^j / n^j` over odd `j`, as an upper bound for the
/// square of every conjugate of every odd coefficient.
fn squared_coefficient_bound(n: usize, edges: usize) -> BigUint {
    let two_e = BigUint::from(2 * edges as u64);
    let mut best = BigUint::one();
    let mut binom = BigUint::one();
    for j in 1..=n {
        binom = binom * BigUint::from((n - j + 1) as u64) / BigUint::from(j as u64);
        if j % 2 == 1 {
            let num = &binom * &binom * two_e.pow(j as u32);
            let den = BigUint::from(n as u64).pow(j as u32);
            best = best.max(num.div_ceil(&den));
        }
    }
    best
}

/// Units `k` modulo `order` with `k ≤ order - k`: one from each `±k` pair.
fn embedding_exponents(order: u64) -> Vec<u64> {
    (1..=order)
        .filter(|&k| k.gcd(&order) == 1 && 2 * k <= order)
        .collect()
}

/// `true` iff `a_j(e^{iθ}) = 0` for every odd `j`, decided exactly.
pub(crate) fn odd_coefficients_vanish(g: &MixedGraph, angle: Angle) -> bool {
    let n = g.n();
    let order = angle.root_order();
    let l = angle.numerator();
    let edges = g.underlying().edge_count();
    let bound = squared_coefficient_bound(n, edges);
    let ks = embedding_exponents(order);
    log::debug!(
        "modular symmetry test: n = {n}, order {order}, {} embeddings, bound 2^{}",
        ks.len(),
        bound.bits() / 2
    );

    let mut modulus_sq = BigUint::one();
    for p in split_primes(order) {
        if modulus_sq > bound {
            return true;
        }
        let f = PrimeField { p };
        let omega = primitive_root_of_unity(p, order);
        for &k in &ks {
            let z = pow_mod(omega, k * l % order, p);
            let z_inv = pow_mod(z, p - 2, p);
            let mut entries = Vec::new();
            for (u, v) in g.arcs() {
                match g.pair_kind(u, v) {
                    PairKind::Digon => entries.push((u, v, 1)),
                    _ => {
                        entries.push((u, v, z));
                        entries.push((v, u, z_inv));
                    }
                }
            }
            let coeffs = charpoly(&f, &SparseMatrix::new(n, entries));
            if coeffs.iter().skip(1).step_by(2).any(|&c| c != 0) {
                return false;
            }
        }
        modulus_sq *= BigUint::from(p) * BigUint::from(p);
    }
    unreachable!("ran out of primes below 2^31 congruent to 1 mod {order}")
}
