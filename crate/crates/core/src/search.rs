//! Bounded exhaustive searches over book graphs, the small-denominator
//! counterexamples, and the coefficient relation on `G_m`.
//!
//! Every odd cycle of `G(s_1, …, s_t)` has length `2t - 1` and deleting any of
//! them leaves the same forest, so all odd coefficients are integer multiples
//! of `a_{2t-1} = -Σ_j s_j (z^{2j-1} + z^{-(2j-1)})`. The scans therefore
//! test that linear form in `ℤ[ζ_{2m}]` with machine integers and run the
//! full exact check only on the witnesses they report.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::{charpoly_berkowitz, elementary_subgraphs, is_symmetric_at};
use crate::constructions::{book_graph, g_m, pi_example, BookParams, LabeledGraph};
use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::rings::{Angle, CommRing, CyclotomicRing, LaurentPoly};

/// Limits of a book-graph scan: `2 ≤ t ≤ max_t` and `1 ≤ Σ s_j ≤ max_sheets`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_t: usize,
    pub max_sheets: u64,
}

impl SearchBounds {
    pub fn new(max_t: usize, max_sheets: u64) -> Result<Self> {
        if max_t < 1 || max_sheets < 1 {
            return Err(Error::invalid("search bounds must be at least 1"));
        }
        Ok(SearchBounds { max_t, max_sheets })
    }

    /// `max_t = (m+1)/2 + 2`, `max_sheets = 2m`.
    pub fn default_for(m: u64) -> Self {
        SearchBounds {
            max_t: (m as usize).div_ceil(2) + 2,
            max_sheets: 2 * m,
        }
    }
}

/// `ζ^{l(2j-1)} + ζ^{-l(2j-1)}` for `j = 1..=t` in the power basis of
/// `ℤ[x]/Φ_{2m}`.
fn sheet_weights(angle: Angle, t: usize) -> Vec<Vec<i64>> {
    let ring = CyclotomicRing::new(angle.root_order()).expect("positive order");
    let l = angle.numerator() as i64;
    (1..=t as i64)
        .map(|j| {
            let mut w = ring.root_power(l * (2 * j - 1));
            ring.add_assign(&mut w, &ring.root_power(-l * (2 * j - 1)));
            w.coeffs()
                .iter()
                .map(|c| c.to_i64().expect("root of unity coefficients are small"))
                .collect()
        })
        .collect()
}

/// Whether `Σ_j s_j (ζ^{2j-1} + ζ^{-(2j-1)})` vanishes at `ζ = e^{iθ}`; for a
/// book graph this is `a_{2t-1} = 0`, which decides symmetry.
pub fn sheet_sum_vanishes(s: &[u64], angle: Angle) -> bool {
    let w = sheet_weights(angle, s.len());
    let d = w.first().map_or(0, Vec::len);
    (0..d).all(|i| {
        s.iter()
            .zip(&w)
            .map(|(&sj, wj)| sj as i128 * wj[i] as i128)
            .sum::<i128>()
            == 0
    })
}

/// Fast decision for a book graph.
pub fn book_is_symmetric(p: &BookParams, angle: Angle) -> bool {
    sheet_sum_vanishes(p.s(), angle)
}

/// Maps sheet index `j` to the least index `j'` with
/// `cos((2j'-1)θ) = cos((2j-1)θ)` for every `θ = lπ/m`: first `j ≡ j + m`,
/// then `j ↔ m + 1 - j`. The result has length `max(2, ⌈m/2⌉)`.
pub fn fold_params(s: &[u64], m: u64) -> Vec<u64> {
    let m = m as usize;
    let mut out = vec![0; m.div_ceil(2).max(2)];
    for (jj, &sj) in s.iter().enumerate() {
        let r = jj % m + 1;
        let r = r.min(m + 1 - r);
        out[r - 1] += sj;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Layer {
    pub t: usize,
    /// Tuples of length `t` with `1 ≤ Σ s_j ≤ max_sheets`.
    pub instances: u64,
    /// Symmetric tuples, ordered by `(Σ s_j, tuple)`.
    pub symmetric: Vec<BookParams>,
}

fn dfs(
    w: &[Vec<i64>],
    j: usize,
    remaining: u64,
    acc: &mut [i64],
    s: &mut Vec<u64>,
    layer: &mut (u64, Vec<Vec<u64>>),
) {
    if j == w.len() {
        if s.iter().any(|&x| x > 0) {
            layer.0 += 1;
            if acc.iter().all(|&a| a == 0) {
                layer.1.push(s.clone());
            }
        }
        return;
    }
    s.push(0);
    dfs(w, j + 1, remaining, acc, s, layer);
    for k in 1..=remaining {
        for (a, b) in acc.iter_mut().zip(&w[j]) {
            *a += b;
        }
        s[j] = k;
        dfs(w, j + 1, remaining - k, acc, s, layer);
    }
    for (a, b) in acc.iter_mut().zip(&w[j]) {
        *a -= remaining as i64 * b;
    }
    s.pop();
}

/// Every tuple of length `t` with at most `max_sheets` sheets, split over the
/// value of `s_1` across the rayon pool and merged in a fixed order.
pub fn scan_layer(angle: Angle, t: usize, max_sheets: u64) -> Layer {
    let w = sheet_weights(angle, t);
    let d = w[0].len();
    let parts: Vec<(u64, Vec<Vec<u64>>)> = (0..=max_sheets)
        .into_par_iter()
        .map(|s1| {
            let mut acc: Vec<i64> = w[0].iter().map(|x| x * s1 as i64).collect();
            acc.resize(d, 0);
            let mut s = vec![s1];
            let mut layer = (0, Vec::new());
            dfs(&w, 1, max_sheets - s1, &mut acc, &mut s, &mut layer);
            layer
        })
        .collect();
    let instances = parts.iter().map(|p| p.0).sum();
    let mut symmetric: Vec<Vec<u64>> = parts.into_iter().flat_map(|p| p.1).collect();
    symmetric.sort_by_key(|s| (s.iter().sum::<u64>(), s.clone()));
    Layer {
        t,
        instances,
        symmetric: symmetric
            .into_iter()
            .map(|s| BookParams::new(s).expect("nonzero tuple of length >= 2"))
            .collect(),
    }
}

/// Least odd circumference among symmetric book graphs found by a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Minimum {
    pub odd_circumference: usize,
    pub t: usize,
    /// Least `Σ s_j` among symmetric tuples of that length.
    pub sheet_count: u64,
    /// First such tuple in `(Σ s_j, tuple)` order.
    pub witness: BookParams,
    /// The full characteristic-polynomial check on the witness graph.
    pub witness_verified: bool,
}

fn minimum_of(layer: &Layer, angle: Angle) -> Option<Minimum> {
    let witness = layer.symmetric.first()?.clone();
    let verified = is_symmetric_at(&book_graph(&witness).graph, angle).expect("valid angle");
    Some(Minimum {
        odd_circumference: 2 * layer.t - 1,
        t: layer.t,
        sheet_count: witness.sheet_count(),
        witness_verified: verified,
        witness,
    })
}

/// Result of [`scan_books`]. Only symmetric tuples are listed; every other
/// tuple within the bounds was checked and found non-symmetric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub angle: Angle,
    pub bounds: SearchBounds,
    pub layers: Vec<Layer>,
    pub minimum: Option<Minimum>,
}

impl SearchReport {
    pub fn instances(&self) -> u64 {
        self.layers.iter().map(|l| l.instances).sum()
    }

    pub fn symmetric(&self) -> impl Iterator<Item = &BookParams> {
        self.layers.iter().flat_map(|l| &l.symmetric)
    }

    pub fn layer(&self, t: usize) -> Option<&Layer> {
        self.layers.iter().find(|l| l.t == t)
    }
}

fn normalized(l: u64, m: u64) -> Result<Angle> {
    let (angle, reduced) = Angle::normalize(l, m)?;
    if reduced {
        log::warn!("θ = {l}π/{m} is not in lowest terms; using {angle}");
    }
    Ok(angle)
}

/// Exact verdict for every book graph within `bounds` at `θ = lπ/m`.
pub fn scan_books(l: u64, m: u64, bounds: SearchBounds) -> Result<SearchReport> {
    let angle = normalized(l, m)?;
    let layers: Vec<Layer> = (2..=bounds.max_t)
        .map(|t| scan_layer(angle, t, bounds.max_sheets))
        .collect();
    let minimum = layers
        .iter()
        .find(|l| !l.symmetric.is_empty())
        .and_then(|l| minimum_of(l, angle));
    Ok(SearchReport {
        angle,
        bounds,
        layers,
        minimum,
    })
}

/// Scans layers `t = 2, 3, …` and stops at the first one containing a
/// symmetric book graph.
pub fn first_symmetric_layer(angle: Angle, bounds: SearchBounds) -> Option<Minimum> {
    (2..=bounds.max_t)
        .map(|t| scan_layer(angle, t, bounds.max_sheets))
        .find(|l| !l.symmetric.is_empty())
        .and_then(|l| minimum_of(&l, angle))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub m: u64,
    pub bounds: SearchBounds,
    /// Numerators `l` that were scanned; all must agree.
    pub numerators: Vec<u64>,
    /// `None` when no book graph within the bounds is symmetric.
    pub minimum: Option<Minimum>,
    pub numerators_agree: bool,
}

impl TableRow {
    pub fn min_odd_circumference(&self) -> Option<usize> {
        self.minimum.as_ref().map(|m| m.odd_circumference)
    }
}

/// Least odd circumference of a symmetric book graph for each `m` in the
/// range, within `bounds` (default bounds per `m` when `None`). Minimality
/// holds only relative to the bounds.
pub fn min_odd_circumference_table(m_from: u64, m_to: u64, bounds: Option<SearchBounds>) -> Result<Vec<TableRow>> {
    if m_from == 0 || m_from > m_to {
        return Err(Error::invalid(format!("bad range {m_from}..={m_to}")));
    }
    (m_from..=m_to)
        .map(|m| {
            let bounds = bounds.unwrap_or_else(|| SearchBounds::default_for(m));
            let mut numerators = vec![1];
            if m > 2 {
                numerators.push(m - 1);
            }
            let results: Vec<Option<Minimum>> = numerators
                .iter()
                .map(|&l| Ok(first_symmetric_layer(Angle::new(l, m)?, bounds)))
                .collect::<Result<_>>()?;
            let key = |r: &Option<Minimum>| r.as_ref().map(|x| (x.t, x.sheet_count));
            let numerators_agree = results.windows(2).all(|w| key(&w[0]) == key(&w[1]));
            Ok(TableRow {
                m,
                bounds,
                numerators,
                minimum: results.into_iter().next().flatten(),
                numerators_agree,
            })
        })
        .collect()
}

/// A non-bipartite graph whose `H_θ` spectrum is symmetric at `θ = lπ/m`.
///
/// | `m`          | graph                      | odd circumference |
/// |--------------|----------------------------|-------------------|
/// | 1            | `K_4` minus an edge, mixed | 3                 |
/// | 2            | `G(0, 1)`                  | 3                 |
/// | `≡ 2 mod 4`  | `G(0^{(m-2)/4}, 1)`        | `m/2`             |
/// | odd, `≥ 3`   | `G(2^{(m-1)/2}, 1)`        | `m`               |
/// | `≡ 0 mod 4`  | `G(0^{m/4-1}, 1, 1)`       | `m/2 + 1`         |
pub fn counterexample_for(l: u64, m: u64) -> Result<LabeledGraph> {
    let angle = normalized(l, m)?;
    let m = angle.denominator() as usize;
    if m == 1 {
        return Ok(LabeledGraph {
            graph: pi_example(),
            labels: Default::default(),
        });
    }
    let s = match m % 4 {
        2 => {
            let mut s = vec![0; ((m - 2) / 4).max(1)];
            s.push(1);
            s
        }
        0 => {
            let mut s = vec![0; m / 4 - 1];
            s.extend([1, 1]);
            s
        }
        _ => {
            let mut s = vec![2; (m - 1) / 2];
            s.push(1);
            s
        }
    };
    Ok(book_graph(&BookParams::new(s)?))
}

/// `(m - 1)` disjoint paths on `2m - 3` vertices: what remains of `G_m` after
/// deleting an odd cycle.
pub fn g_m_residual_forest(m: usize) -> Result<MixedGraph> {
    if m < 2 {
        return Err(Error::invalid(format!("need m >= 2, got {m}")));
    }
    let len = 2 * m - 3;
    let mut f = MixedGraph::new((m - 1) * len);
    for c in 0..m - 1 {
        for i in 0..len.saturating_sub(1) {
            f.add_arc(c * len + i, c * len + i + 1)?;
        }
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub k: usize,
    /// Number of elementary subgraphs of the residual forest on `2(k-m)` vertices.
    pub multiplier: u64,
    pub holds: bool,
}

/// On `G_m`: `a_{2k-1} = 0` for `k < m`, and for every `k > m` with
/// `2k - 1 ≤ n`, `a_{2k-1} = (-1)^{k-m} M_k a_{2m-1}` as Laurent polynomials.
/// Entries with `k < m` have `multiplier = 0`.
pub fn coefficient_relation(m: usize) -> Result<Vec<RelationCheck>> {
    if !(2..=4).contains(&m) {
        return Err(Error::invalid(format!("the relation is checked for 2 <= m <= 4, got {m}")));
    }
    let g = g_m(m)?.graph;
    let p = charpoly_berkowitz(&g);
    let forest = g_m_residual_forest(m)?;
    let base = p.coeff(2 * m - 1);
    let mut out = Vec::new();
    for k in 1..m {
        out.push(RelationCheck {
            k,
            multiplier: 0,
            holds: p.coeff(2 * k - 1).is_zero(),
        });
    }
    for k in m + 1..=g.n().div_ceil(2) {
        let size = 2 * (k - m);
        let mk = if size <= forest.n() {
            elementary_subgraphs(&forest, size)?.len() as u64
        } else {
            0
        };
        let sign = if (k - m).is_multiple_of(2) { 1 } else { -1 };
        let expect = &LaurentPoly::constant(sign * mk as i64) * &base;
        out.push(RelationCheck {
            k,
            multiplier: mk,
            holds: p.coeff(2 * k - 1) == expect,
        });
    }
    Ok(out)
}

pub fn verify_coefficient_relation(m: usize) -> Result<bool> {
    Ok(coefficient_relation(m)?.iter().all(|c| c.holds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::{charpoly_at_angle, is_symmetric_exact, is_symmetric_numeric};
    use crate::rings::CyclotomicElement;

    fn angle(l: u64, m: u64) -> Angle {
        Angle::new(l, m).unwrap()
    }

    #[test]
    fn default_bounds() {
        assert_eq!(SearchBounds::default_for(13), SearchBounds { max_t: 9, max_sheets: 26 });
        assert!(SearchBounds::new(0, 3).is_err());
    }

    #[test]
    fn fast_path_matches_full_check() {
        let tuples: [&[u64]; 8] = [&[2, 1], &[1, 1], &[0, 1], &[2, 2, 1], &[1, 0, 1, 1], &[1, 2, 3], &[0, 0, 1, 1], &[3, 0, 2]];
        for s in tuples {
            let p = BookParams::new(s.to_vec()).unwrap();
            let g = book_graph(&p).graph;
            for m in 1..=12 {
                let a = angle(1, m);
                let full = charpoly_at_angle(&g, a)
                    .unwrap()
                    .iter()
                    .skip(1)
                    .step_by(2)
                    .all(CyclotomicElement::is_zero);
                assert_eq!(book_is_symmetric(&p, a), full, "{p} at π/{m}");
            }
        }
    }

    #[test]
    fn layer_counts() {
        // tuples of length t with 1 <= sum <= S: C(S + t, t) - 1
        let l = scan_layer(angle(1, 5), 3, 10);
        assert_eq!(l.instances, 285);
        assert_eq!(l.symmetric.first().map(|p| p.s().to_vec()), Some(vec![2, 2, 1]));
    }

    #[test]
    fn fold_preserves_verdicts() {
        for m in 2..=9u64 {
            for s in [vec![1, 0, 2, 1, 0, 3, 1, 1, 2, 1], vec![0, 1, 1, 0, 0, 0, 2, 1, 1], vec![2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1]] {
                let f = fold_params(&s, m);
                for l in (1..=m).filter(|&l| num_integer::Integer::gcd(&l, &m) == 1) {
                    assert_eq!(sheet_sum_vanishes(&s, angle(l, m)), sheet_sum_vanishes(&f, angle(l, m)), "{s:?} m = {m}");
                }
            }
        }
        assert_eq!(fold_params(&[1, 2, 3, 4, 5], 3), vec![1 + 3 + 4, 2 + 5]);
    }

    #[test]
    fn counterexample_shapes() {
        let ring = |s: &[u64]| BookParams::new(s.to_vec()).unwrap();
        assert_eq!(counterexample_for(1, 6).unwrap(), book_graph(&ring(&[0, 1])));
        assert_eq!(counterexample_for(1, 3).unwrap(), book_graph(&ring(&[2, 1])));
        assert_eq!(counterexample_for(1, 4).unwrap(), book_graph(&ring(&[1, 1])));
        assert_eq!(counterexample_for(3, 10).unwrap(), book_graph(&ring(&[0, 0, 1])));
        assert_eq!(counterexample_for(2, 12).unwrap(), book_graph(&ring(&[0, 1])));
        assert!(counterexample_for(0, 3).is_err());
    }

    #[test]
    fn counterexamples_are_symmetric_and_not_bipartite() {
        for m in 1..=10u64 {
            for l in (1..=m).filter(|&l| num_integer::Integer::gcd(&l, &m) == 1) {
                let g = counterexample_for(l, m).unwrap().graph;
                assert!(!g.is_bipartite());
                assert!(is_symmetric_exact(&g, l, m).unwrap(), "{l}/{m}");
            }
        }
    }

    #[test]
    fn scan_agrees_with_numeric_on_small_graphs() {
        for m in [3u64, 4, 5, 6] {
            let a = angle(1, m);
            for t in 2..=3 {
                let layer = scan_layer(a, t, 4);
                let sym: std::collections::BTreeSet<_> = layer.symmetric.iter().cloned().collect();
                let mut checked = 0;
                for s1 in 0..=4u64 {
                    for s2 in 0..=4 - s1 {
                        let mut s = vec![s1, s2];
                        if t == 3 {
                            s.push(4 - s1 - s2);
                        }
                        let Ok(p) = BookParams::new(s) else { continue };
                        let g = book_graph(&p).graph;
                        if g.n() > 25 {
                            continue;
                        }
                        let num = is_symmetric_numeric(&g, a.radians(), 1e-8).unwrap();
                        assert_eq!(num, sym.contains(&p), "{p} at {a}");
                        checked += 1;
                    }
                }
                assert!(checked > 0);
            }
        }
    }

    #[test]
    fn relation_small_cases() {
        let r = coefficient_relation(3).unwrap();
        let k4 = r.iter().find(|c| c.k == 4).unwrap();
        assert_eq!(k4.multiplier, 4);
        assert!(r.iter().all(|c| c.holds));
        assert!(verify_coefficient_relation(2).unwrap());
        assert!(coefficient_relation(5).is_err());
    }

    #[test]
    fn residual_forest_matches_g_m() {
        for m in 2..=4 {
            let g = g_m(m).unwrap().graph;
            let odd = g.enumerate_cycles(None).into_iter().find(|c| c.len() % 2 == 1).unwrap();
            let rest = g.remove_vertices(odd.vertices()).underlying();
            let f = g_m_residual_forest(m).unwrap().underlying();
            assert_eq!(rest.forest_canonical_form(), f.forest_canonical_form());
        }
    }

    #[test]
    fn table_small_range() {
        let rows = min_odd_circumference_table(3, 6, None).unwrap();
        let got: Vec<_> = rows.iter().map(|r| r.min_odd_circumference()).collect();
        assert_eq!(got, vec![Some(3), Some(3), Some(5), Some(3)]);
        assert!(rows.iter().all(|r| r.numerators_agree));
        assert!(rows.iter().all(|r| r.minimum.as_ref().unwrap().witness_verified));
        assert!(min_odd_circumference_table(4, 3, None).is_err());
    }

    #[test]
    fn pi_has_no_symmetric_book() {
        let r = scan_books(1, 1, SearchBounds::new(4, 6).unwrap()).unwrap();
        assert!(r.minimum.is_none());
        assert_eq!(r.symmetric().count(), 0);
    }

    #[test]
    fn half_pi_everything_symmetric() {
        let r = scan_books(1, 2, SearchBounds::default_for(2)).unwrap();
        assert_eq!(r.symmetric().count() as u64, r.instances());
        assert_eq!(r.minimum.unwrap().witness.s(), &[0, 1]);
    }

    #[test]
    fn unreduced_angles_are_normalized() {
        let r = scan_books(2, 10, SearchBounds::new(3, 5).unwrap()).unwrap();
        assert_eq!(r.angle, angle(1, 5));
    }
}
