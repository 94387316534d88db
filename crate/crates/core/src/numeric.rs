//! Dense θ-Hermitian adjacency matrices and a complex Jacobi eigensolver.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{MixedGraph, PairKind};

const MAX_SWEEPS: usize = 100;
const CONVERGENCE: f64 = 1e-12;

/// Dense `n × n` Hermitian matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    /// Builds a matrix from its upper triangle; the lower triangle is filled
    /// by conjugation and the diagonal made real.
    pub fn from_upper(n: usize, mut entry: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(entry(i, i).re, 0.0);
            for j in i + 1..n {
                let v = entry(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v.conj();
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol)
        })
    }

    /// `D^* M D` for the diagonal unitary `D = diag(e^{iφ_k})`.
    pub fn conjugate_by_phases(&self, phases: &[f64]) -> Self {
        assert_eq!(phases.len(), self.n, "one phase per row");
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                let d = Complex64::from_polar(1.0, phases[j] - phases[i]);
                out.data[i * self.n + j] = self.get(i, j) * d;
            }
        }
        out
    }

    /// `M v`
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn eigenvalues(&self) -> Result<Spectrum> {
        self.eigen().map(|(values, _)| Spectrum {
            theta: f64::NAN,
            eigenvalues: values,
        })
    }

    /// Eigenvalues in ascending order with their unit eigenvectors.
    pub fn eigen(&self) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut v = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            v[i * n + i] = Complex64::new(1.0, 0.0);
        }
        let scale = self.frobenius_norm();
        let target = CONVERGENCE * scale;

        let off_norm = |a: &[Complex64]| {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += a[i * n + j].norm_sqr();
                    }
                }
            }
            s.sqrt()
        };

        let mut sweeps = 0;
        while off_norm(&a) > target {
            if sweeps == MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    sweeps,
                    off_norm: off_norm(&a),
                });
            }
            sweeps += 1;
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, n, p, q);
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
        let values = order.iter().map(|&i| a[i * n + i].re).collect();
        let vectors = order
            .iter()
            .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
            .collect();
        Ok((values, vectors))
    }
}

/// One two-sided unitary rotation annihilating `a[p][q]`: a phase on
/// index `q` makes the entry real, then a real Jacobi rotation zeroes it.
/// `v` accumulates the product of the rotations (eigenvectors as columns).
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    // U = diag(…, conj(w) at q, …) with w = apq / |apq|
    let w = apq / r;
    let wc = w.conj();
    for k in 0..n {
        a[k * n + q] *= wc;
    }
    for k in 0..n {
        a[q * n + k] *= w;
    }
    for k in 0..n {
        v[k * n + q] *= wc;
    }
    a[p * n + q] = Complex64::new(r, 0.0);
    a[q * n + p] = Complex64::new(r, 0.0);

    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let kp = a[k * n + p];
        let kq = a[k * n + q];
        a[k * n + p] = kp * c - kq * s;
        a[k * n + q] = kp * s + kq * c;
    }
    for k in 0..n {
        let pk = a[p * n + k];
        let qk = a[q * n + k];
        a[p * n + k] = pk * c - qk * s;
        a[q * n + k] = pk * s + qk * c;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let kp = v[k * n + p];
        let kq = v[k * n + q];
        v[k * n + p] = kp * c - kq * s;
        v[k * n + q] = kp * s + kq * c;
    }
}

/// `H_θ(G)`: `1` on digons, `e^{iθ}` at `(u, v)` for an arc `u → v`,
/// `e^{-iθ}` at `(v, u)`, zero elsewhere.
pub fn build_h_theta(g: &MixedGraph, theta: f64) -> HermitianMatrix {
    if !(theta > 0.0 && theta <= std::f64::consts::PI) {
        log::warn!("θ = {theta} lies outside (0, π]");
    }
    let z = Complex64::from_polar(1.0, theta);
    HermitianMatrix::from_upper(g.n(), |u, v| match g.pair_kind(u, v) {
        PairKind::Digon => Complex64::new(1.0, 0.0),
        PairKind::Forward => z,
        PairKind::Backward => z.conj(),
        PairKind::None => Complex64::new(0.0, 0.0),
    })
}

/// Eigenvalues of `H_θ(G)` in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub theta: f64,
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn of(g: &MixedGraph, theta: f64) -> Result<Spectrum> {
        let mut s = build_h_theta(g, theta).eigenvalues()?;
        s.theta = theta;
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// True iff `|λ_i + λ_{n+1-i}| ≤ tol·(1 + max|λ|)` for every `i`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let bound = tol * (1.0 + self.spectral_radius());
        let ev = &self.eigenvalues;
        let n = ev.len();
        (0..n / 2 + n % 2).all(|i| (ev[i] + ev[n - 1 - i]).abs() <= bound)
    }
}

fn round_sig(x: f64, digits: usize) -> f64 {
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// `{"theta": …, "eigenvalues": […]}` with 15 significant digits.
impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let ev: Vec<f64> = self.eigenvalues.iter().map(|&x| round_sig(x, 15)).collect();
        let mut st = s.serialize_struct("Spectrum", 2)?;
        st.serialize_field("theta", &round_sig(self.theta, 15))?;
        st.serialize_field("eigenvalues", &ev)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn directed_triangle() -> MixedGraph {
        MixedGraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn single_arc_matrix() {
        let g = MixedGraph::from_arcs(2, [(0, 1)]).unwrap();
        let h = build_h_theta(&g, FRAC_PI_2);
        assert!((h.get(0, 1) - c(0.0, 1.0)).norm() < 1e-15);
        assert!((h.get(1, 0) - c(0.0, -1.0)).norm() < 1e-15);
        assert!(h.is_hermitian(0.0));
    }

    #[test]
    fn digon_is_real_one() {
        let mut g = MixedGraph::new(2);
        g.add_digon(0, 1).unwrap();
        for th in [0.3, 1.0, PI] {
            let h = build_h_theta(&g, th);
            assert_eq!(h.get(0, 1), c(1.0, 0.0));
        }
    }

    #[test]
    fn theta_pi_is_negated_adjacency() {
        let g = directed_triangle();
        let h = build_h_theta(&g, PI);
        for (u, v) in g.arcs() {
            assert!((h.get(u, v) - c(-1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_matrix() {
        let s = HermitianMatrix::zeros(3).eigenvalues().unwrap();
        assert_eq!(s.eigenvalues, vec![0.0, 0.0, 0.0]);
        assert!(HermitianMatrix::zeros(0).eigenvalues().unwrap().is_empty());
    }

    #[test]
    fn directed_triangle_closed_form() {
        // circulant: 2cos((3θ + 2πk)/3)
        for th in [FRAC_PI_6, 0.4, FRAC_PI_3, 2.0] {
            let s = Spectrum::of(&directed_triangle(), th).unwrap();
            let mut expect: Vec<f64> = (0..3)
                .map(|k| 2.0 * ((3.0 * th + 2.0 * PI * k as f64) / 3.0).cos())
                .collect();
            expect.sort_by(f64::total_cmp);
            for (a, b) in s.eigenvalues.iter().zip(&expect) {
                assert!((a - b).abs() < 1e-9, "θ = {th}: {a} vs {b}");
            }
        }
        let s = Spectrum::of(&directed_triangle(), FRAC_PI_6).unwrap();
        let r3 = 3f64.sqrt();
        for (a, b) in s.eigenvalues.iter().zip([-r3, 0.0, r3]) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn residuals_are_small() {
        let mut g = MixedGraph::from_arcs(6, [(0, 1), (1, 2), (3, 2), (4, 0), (5, 3), (2, 5)])
            .unwrap();
        g.add_digon(1, 4).unwrap();
        g.add_digon(0, 3).unwrap();
        let h = build_h_theta(&g, 0.77);
        let (vals, vecs) = h.eigen().unwrap();
        let norm = h.frobenius_norm();
        for (lam, v) in vals.iter().zip(&vecs) {
            let hv = h.apply(v);
            let res: f64 = hv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - b * lam).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-10 * norm, "residual {res}");
        }
    }

    #[test]
    fn symmetry_check() {
        let sym = |v: Vec<f64>| Spectrum { theta: 0.0, eigenvalues: v }.is_symmetric(1e-8);
        assert!(sym(vec![-2.0, 0.0, 2.0]));
        assert!(!sym(vec![-1.0, 1.0, 1.0]));
        assert!(sym(vec![]));
        assert!(!sym(vec![0.5]));
    }

    #[test]
    fn fifteen_significant_digits_in_json_form() {
        assert_eq!(round_sig(1.0 / 3.0, 15), 0.333333333333333);
        assert_eq!(round_sig(-2.0, 15), -2.0);
    }
}
