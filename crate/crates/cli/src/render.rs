//! Human-readable renderings.

use bdp_core::rings::{chebyshev_t, CyclotomicElement, LaurentPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `Σ_j a_j x^{n-j}` for integer coefficients `a_0, …, a_n`.
pub fn integer_poly(coeffs: &[BigInt]) -> String {
    let n = coeffs.len().saturating_sub(1);
    let mut out = String::new();
    for (j, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let deg = n - j;
        let mag = a.abs();
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if a.is_negative() { " - " } else { " + " });
        }
        let coef = if mag.is_one() && deg > 0 { String::new() } else { mag.to_string() };
        match deg {
            0 => out.push_str(&coef),
            1 => out.push_str(&format!("{coef}x")),
            _ => out.push_str(&format!("{coef}x^{deg}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn as_integer(e: &CyclotomicElement) -> Option<BigInt> {
    let c = e.coeffs();
    if c.iter().skip(1).all(Zero::is_zero) {
        Some(c.first().cloned().unwrap_or_default())
    } else {
        None
    }
}

fn chebyshev_text(k: usize) -> String {
    if k == 1 {
        "c".into()
    } else {
        format!("({})", chebyshev_t(k))
    }
}

/// Writes a self-conjugate `a = c_0 + Σ_k b_k (z^k + z^{-k})` as
/// `c_0 ± 2(…)` with each `cos kθ` expanded as `T_k(c)`, when all `b_k`
/// share a sign. Returns `None` otherwise or when `a` is constant.
pub fn cos_factored(a: &LaurentPoly) -> Option<String> {
    let b: Vec<(i64, &BigInt)> = a.terms().filter(|(e, _)| *e > 0).collect();
    if b.is_empty() {
        return None;
    }
    let negative = b[0].1.is_negative();
    if b.iter().any(|(_, c)| c.is_negative() != negative) {
        return None;
    }
    let inner: Vec<String> = b
        .iter()
        .map(|(k, c)| {
            let mag = c.abs();
            let t = chebyshev_text(*k as usize);
            if mag.is_one() {
                t
            } else {
                format!("{mag}{t}")
            }
        })
        .collect();
    let inner = if b.len() == 1 && b[0].1.abs().is_one() {
        chebyshev_t(b[0].0 as usize).to_string()
    } else {
        inner.join(" + ")
    };
    let c0 = a.coeff(0);
    Some(match (c0.is_zero(), negative) {
        (true, true) => format!("-2({inner})"),
        (true, false) => format!("2({inner})"),
        (false, true) => format!("{c0} - 2({inner})"),
        (false, false) => format!("{c0} + 2({inner})"),
    })
}

/// Fixed-precision float with negative zero folded to zero.
pub fn float(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_polynomials() {
        let c = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(integer_poly(&c(&[1, 0, -6, 0, 5])), "x^4 - 6x^2 + 5");
        assert_eq!(integer_poly(&c(&[1, 0, 0, 0])), "x^3");
        assert_eq!(integer_poly(&c(&[1, -1])), "x - 1");
        assert_eq!(integer_poly(&c(&[0])), "0");
    }

    #[test]
    fn factored_cos_forms() {
        let s = LaurentPoly::two_cos(1) + LaurentPoly::two_cos(2) + LaurentPoly::two_cos(3);
        let a4 = &LaurentPoly::constant(3) - &s;
        assert_eq!(cos_factored(&a4).unwrap(), "3 - 2(c + (2c^2 - 1) + (4c^3 - 3c))");
        assert_eq!(cos_factored(&LaurentPoly::two_cos(2)).unwrap(), "2(2c^2 - 1)");
        let mixed = &LaurentPoly::two_cos(1) - &LaurentPoly::two_cos(2);
        assert!(cos_factored(&mixed).is_none());
        assert!(cos_factored(&LaurentPoly::constant(4)).is_none());
    }

    #[test]
    fn floats() {
        assert_eq!(float(-0.0), "0.000000000000");
        assert_eq!(float(-1e-15), "0.000000000000");
        assert_eq!(float(-1.5), "-1.500000000000");
    }
}
