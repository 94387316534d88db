use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// A rational angle θ = lπ/m with gcd(l, m) = 1 and 0 < l/m ≤ 1.
///
/// `e^{iθ}` is the root of unity `ζ_{2m}^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Angle {
    l: u64,
    m: u64,
}

impl Angle {
    /// Reduces `l/m` to lowest terms. Angles outside (0, π] are rejected.
    pub fn new(l: u64, m: u64) -> Result<Self> {
        Self::normalize(l, m).map(|(a, _)| a)
    }

    /// Like [`Angle::new`], also reporting whether a common factor was removed.
    pub fn normalize(l: u64, m: u64) -> Result<(Self, bool)> {
        if m == 0 {
            return Err(Error::invalid("angle denominator must be positive"));
        }
        if l == 0 || l > m {
            return Err(Error::invalid(format!(
                "angle {l}π/{m} is outside (0, π]"
            )));
        }
        let g = l.gcd(&m);
        if g != 1 {
            log::warn!("angle {l}π/{m} normalized to {}π/{}", l / g, m / g);
        }
        Ok((Angle { l: l / g, m: m / g }, g != 1))
    }

    pub fn numerator(&self) -> u64 {
        self.l
    }

    pub fn denominator(&self) -> u64 {
        self.m
    }

    pub fn radians(&self) -> f64 {
        self.l as f64 * std::f64::consts::PI / self.m as f64
    }

    /// Order `n` of the cyclotomic ring holding `e^{iθ} = ζ_n^l`, namely `2m`.
    pub fn root_order(&self) -> u64 {
        2 * self.m
    }

    /// All irreducible angles with denominator `m`.
    pub fn all_with_denominator(m: u64) -> Vec<Angle> {
        (1..=m)
            .filter(|l| l.gcd(&m) == 1)
            .map(|l| Angle { l, m })
            .collect()
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.l, self.m)
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Parses `"l/m"`, meaning θ = lπ/m.
    fn from_str(s: &str) -> Result<Self> {
        let (l, m) = s
            .split_once('/')
            .ok_or_else(|| Error::invalid(format!("expected l/m, got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| Error::invalid(format!("bad angle component {t:?}: {e}")))
        };
        Angle::new(parse(l)?, parse(m)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let (a, reduced) = Angle::normalize(2, 6).unwrap();
        assert_eq!((a.numerator(), a.denominator()), (1, 3));
        assert!(reduced);
        assert_eq!(a.root_order(), 6);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Angle::new(0, 3).is_err());
        assert!(Angle::new(4, 3).is_err());
        assert!(Angle::new(1, 0).is_err());
        assert_eq!(Angle::new(3, 3).unwrap(), Angle::new(1, 1).unwrap());
    }

    #[test]
    fn parses_fraction() {
        let a: Angle = "1/6".parse().unwrap();
        assert!((a.radians() - std::f64::consts::PI / 6.0).abs() < 1e-15);
        assert!("1-6".parse::<Angle>().is_err());
    }

    #[test]
    fn enumerates_coprime_numerators() {
        let ls: Vec<u64> = Angle::all_with_denominator(12)
            .iter()
            .map(|a| a.numerator())
            .collect();
        assert_eq!(ls, vec![1, 5, 7, 11]);
        assert_eq!(Angle::all_with_denominator(1).len(), 1);
    }
}
