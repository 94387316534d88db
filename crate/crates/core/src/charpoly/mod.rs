//! Exact characteristic polynomials of `H_θ` and symmetric-spectrum decisions.
//!
//! The spectrum of a Hermitian matrix is symmetric about the origin exactly
//! when every odd-index coefficient `a_{2l-1}` of its characteristic
//! polynomial vanishes.

mod berkowitz;
mod elementary;
mod modular;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{MixedGraph, PairKind};
use crate::numeric::Spectrum;
use crate::rings::{Angle, CommRing, CosPoly, CyclotomicElement, CyclotomicRing, LaurentPoly, LaurentRing};

pub use berkowitz::{charpoly as berkowitz_charpoly, SparseMatrix};
pub use elementary::{charpoly_elementary, elementary_subgraphs, re_cycle, ElementarySubgraph};

/// Default relative tolerance for numeric symmetry checks.
pub const DEFAULT_TOL: f64 = 1e-8;

/// `det(xI - H_θ) = Σ_{j=0}^{n} a_j x^{n-j}` with `a_j ∈ ℤ[z, z^{-1}]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coeffs: Vec<LaurentPoly>,
}

impl CharPoly {
    pub(crate) fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        debug_assert_eq!(coeffs.first(), Some(&LaurentPoly::one()));
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// `a_j`; zero beyond the degree.
    pub fn coeff(&self, j: usize) -> LaurentPoly {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// Every coefficient as a polynomial in `cos θ`.
    pub fn cos_coeffs(&self) -> Result<Vec<CosPoly>> {
        self.coeffs.iter().map(LaurentPoly::to_cos_poly).collect()
    }

    /// Every coefficient evaluated exactly at `z = e^{iθ}`.
    pub fn at_angle(&self, angle: Angle) -> Result<Vec<CyclotomicElement>> {
        self.coeffs
            .iter()
            .map(|a| a.eval_at_root_of_unity(angle.numerator() as i64, angle.root_order()))
            .collect()
    }

    /// Every coefficient evaluated in double precision.
    pub fn eval_numeric(&self, theta: f64) -> Result<Vec<f64>> {
        self.coeffs.iter().map(|a| a.eval_numeric(theta)).collect()
    }

    /// All odd-index coefficients vanish at `angle`.
    pub fn is_symmetric_at(&self, angle: Angle) -> Result<bool> {
        Ok(self
            .at_angle(angle)?
            .iter()
            .skip(1)
            .step_by(2)
            .all(CyclotomicElement::is_zero))
    }
}

/// `{"degree": n, "coefficients": [a_0, …, a_n]}`
impl Serialize for CharPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CharPoly", 2)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("coefficients", &self.coeffs)?;
        st.end()
    }
}

/// Entry `(u, v)` of `H_θ` as a Laurent monomial: `1` for a digon, `z` for
/// `u → v`, `z^{-1}` for `v → u`, `0` otherwise.
pub fn entry_weight(g: &MixedGraph, u: usize, v: usize) -> Result<LaurentPoly> {
    Ok(match g.classify_pair(u, v)? {
        PairKind::Digon => LaurentPoly::one(),
        PairKind::Forward => LaurentPoly::monomial(1, 1),
        PairKind::Backward => LaurentPoly::monomial(-1, 1),
        PairKind::None => LaurentPoly::zero(),
    })
}

/// `H_θ` with entries in `ring`, given the images of `1`, `z` and `z^{-1}`.
fn symbolic_matrix<R: CommRing>(g: &MixedGraph, one: R::Elem, z: R::Elem, z_inv: R::Elem) -> SparseMatrix<R::Elem> {
    let mut entries = Vec::new();
    for (u, v) in g.arcs() {
        let e = match g.pair_kind(u, v) {
            PairKind::Digon => one.clone(),
            PairKind::Forward => z.clone(),
            _ => unreachable!("an arc is a digon or forward from its tail"),
        };
        entries.push((u, v, e));
        if g.pair_kind(u, v) == PairKind::Forward {
            entries.push((v, u, z_inv.clone()));
        }
    }
    SparseMatrix::new(g.n(), entries)
}

/// Exact characteristic polynomial by the division-free Berkowitz recursion.
pub fn charpoly_berkowitz(g: &MixedGraph) -> CharPoly {
    let m = symbolic_matrix::<LaurentRing>(
        g,
        LaurentPoly::one(),
        LaurentPoly::monomial(1, 1),
        LaurentPoly::monomial(-1, 1),
    );
    CharPoly::from_coeffs(berkowitz_charpoly(&LaurentRing, &m))
}

/// Characteristic polynomial coefficients evaluated at `z = ζ_{2m}^l`,
/// computed directly in `ℤ[x]/Φ_{2m}` without forming Laurent coefficients.
pub fn charpoly_at_angle(g: &MixedGraph, angle: Angle) -> Result<Vec<CyclotomicElement>> {
    let ring = CyclotomicRing::new(angle.root_order())?;
    let l = angle.numerator() as i64;
    let m = symbolic_matrix::<CyclotomicRing>(g, ring.one(), ring.root_power(l), ring.root_power(-l));
    Ok(berkowitz_charpoly(&ring, &m))
}

/// `f_j` with `f_j(cos θ) = a_j(e^{iθ})`.
pub fn coeff_in_cos(g: &MixedGraph, j: usize) -> Result<CosPoly> {
    if j > g.n() {
        return Err(Error::invalid(format!(
            "coefficient index {j} exceeds the degree {}",
            g.n()
        )));
    }
    charpoly_berkowitz(g).coeff(j).to_cos_poly()
}

/// Exact decision of θ-symmetry for θ = lπ/m: every odd coefficient of the
/// characteristic polynomial is zero in `ℤ[ζ_{2m}]`.
pub fn is_symmetric_exact(g: &MixedGraph, l: u64, m: u64) -> Result<bool> {
    let angle = Angle::new(l, m)?;
    is_symmetric_at(g, angle)
}

/// Same decision as [`is_symmetric_exact`] for an already normalized angle.
///
/// Runs modulo a certified set of split primes rather than over
/// `ℤ[ζ_{2m}]` with big integers; [`charpoly_at_angle`] gives the exact
/// coefficient values when those are needed.
pub fn is_symmetric_at(g: &MixedGraph, angle: Angle) -> Result<bool> {
    Ok(modular::odd_coefficients_vanish(g, angle))
}

/// Numeric decision from the eigenvalues of `H_θ`.
pub fn is_symmetric_numeric(g: &MixedGraph, theta: f64, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    Ok(Spectrum::of(g, theta)?.is_symmetric(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn guo_mohar() -> MixedGraph {
        let mut g = MixedGraph::from_arcs(4, [(2, 1), (3, 2), (3, 0), (2, 0), (1, 3)]).unwrap();
        g.add_digon(0, 1).unwrap();
        g
    }

    fn directed_triangle() -> MixedGraph {
        MixedGraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn entry_weights() {
        let g = guo_mohar();
        assert_eq!(entry_weight(&g, 0, 1).unwrap(), LaurentPoly::one());
        assert_eq!(entry_weight(&g, 1, 3).unwrap(), LaurentPoly::monomial(1, 1));
        assert_eq!(entry_weight(&g, 3, 1).unwrap(), LaurentPoly::monomial(-1, 1));
        let h = MixedGraph::from_arcs(3, [(0, 1)]).unwrap();
        assert_eq!(entry_weight(&h, 0, 2).unwrap(), LaurentPoly::zero());
        assert!(entry_weight(&h, 1, 1).is_err());
    }

    #[test]
    fn single_arc_and_empty() {
        let g = MixedGraph::from_arcs(2, [(0, 1)]).unwrap();
        let p = charpoly_berkowitz(&g);
        assert_eq!(p.coeffs(), &[LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::constant(-1)]);
        let e = charpoly_berkowitz(&MixedGraph::new(3));
        assert_eq!(e.degree(), 3);
        assert!(e.coeffs()[1..].iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn guo_mohar_at_half_pi() {
        let p = charpoly_berkowitz(&guo_mohar());
        let quarter = Angle::new(1, 2).unwrap();
        let vals = p.at_angle(quarter).unwrap();
        let ring = CyclotomicRing::new(4).unwrap();
        let expect = [1, 0, -6, 0, 5].map(|c| ring.from_int(c));
        assert_eq!(vals, expect);
        assert_eq!(charpoly_at_angle(&guo_mohar(), quarter).unwrap(), expect);
        assert!(is_symmetric_exact(&guo_mohar(), 1, 2).unwrap());
    }

    #[test]
    fn directed_triangle_symmetry() {
        assert!(is_symmetric_exact(&directed_triangle(), 1, 6).unwrap());
        assert!(!is_symmetric_exact(&directed_triangle(), 1, 3).unwrap());
        assert!(is_symmetric_exact(&directed_triangle(), 1, 0).is_err());
    }

    #[test]
    fn cos_coefficients() {
        let c = coeff_in_cos(&directed_triangle(), 3).unwrap();
        assert_eq!(c, CosPoly::from_i64(&[0, 6, 0, -8]));
        assert_eq!(coeff_in_cos(&guo_mohar(), 2).unwrap(), CosPoly::constant(-6));
        assert!(coeff_in_cos(&guo_mohar(), 5).is_err());
    }

    fn random_graph(n: usize, seed: u64) -> MixedGraph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut g = MixedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                match rng.gen_range(0..5) {
                    0 => g.add_digon(u, v).unwrap(),
                    1 => g.add_arc(u, v).unwrap(),
                    2 => g.add_arc(v, u).unwrap(),
                    _ => {}
                }
            }
        }
        g
    }

    #[test]
    fn modular_decision_matches_big_integer_values() {
        let mut seen = [0usize; 2];
        for seed in 0..150u64 {
            let g = random_graph(3 + seed as usize % 5, seed);
            for m in 1..=6u64 {
                for l in (1..=m).filter(|l| num_integer::Integer::gcd(l, &m) == 1) {
                    let a = Angle::new(l, m).unwrap();
                    let exact = charpoly_at_angle(&g, a)
                        .unwrap()
                        .iter()
                        .skip(1)
                        .step_by(2)
                        .all(CyclotomicElement::is_zero);
                    assert_eq!(is_symmetric_at(&g, a).unwrap(), exact, "seed {seed}, θ = {a}");
                    seen[exact as usize] += 1;
                }
            }
        }
        assert!(seen[0] > 100 && seen[1] > 100, "{seen:?}");
    }

    #[test]
    fn numeric_decisions() {
        assert!(is_symmetric_numeric(&guo_mohar(), FRAC_PI_2, DEFAULT_TOL).unwrap());
        assert!(!is_symmetric_numeric(&guo_mohar(), FRAC_PI_2 + 0.01, DEFAULT_TOL).unwrap());
        assert!(is_symmetric_numeric(&guo_mohar(), FRAC_PI_2, 0.0).is_err());
        let path = MixedGraph::from_arcs(4, [(0, 1), (2, 1), (2, 3)]).unwrap();
        for th in [0.1, 1.3, 2.9] {
            assert!(is_symmetric_numeric(&path, th, DEFAULT_TOL).unwrap());
        }
    }
}
