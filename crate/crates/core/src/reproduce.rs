//! The verification battery behind `bdp verify`: every published number and
//! identity this crate reproduces, each as a named check.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charpoly::{
    charpoly_at_angle, charpoly_berkowitz, charpoly_elementary, coeff_in_cos, is_symmetric_at, is_symmetric_exact,
    is_symmetric_numeric,
};
use crate::constructions::{book_graph, double_proper, g_m, guo_mohar, mohar_graph, BookParams, Construction};
use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::numeric::Spectrum;
use crate::rings::{chebyshev_t, Angle, CosPoly, CyclotomicRing};
use crate::search::{counterexample_for, min_odd_circumference_table, scan_layer, verify_coefficient_relation};

const SEED: u64 = 0x5eed_b00c;

/// A mixed graph on `n` vertices where each pair is independently empty,
/// an arc in either direction, or a digon.
pub fn random_mixed_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> MixedGraph {
    let mut g = MixedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                match rng.gen_range(0..3) {
                    0 => g.add_digon(u, v),
                    1 => g.add_arc(u, v),
                    _ => g.add_arc(v, u),
                }
                .expect("distinct in-range vertices");
            }
        }
    }
    g
}

/// As [`random_mixed_graph`], but only between two random colour classes.
pub fn random_bipartite_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> MixedGraph {
    let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let mut g = MixedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && rng.gen_bool(density) {
                match rng.gen_range(0..3) {
                    0 => g.add_digon(u, v),
                    1 => g.add_arc(u, v),
                    _ => g.add_arc(v, u),
                }
                .expect("distinct in-range vertices");
            }
        }
    }
    g
}

/// A random `θ = lπ/m` in lowest terms with `m ≤ max_m`.
pub fn random_angle<R: Rng>(rng: &mut R, max_m: u64) -> Angle {
    let m = rng.gen_range(1..=max_m);
    loop {
        let l = rng.gen_range(1..=m);
        if l.gcd(&m) == 1 {
            return Angle::new(l, m).expect("in range");
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

type Outcome = std::result::Result<String, String>;

struct Check {
    id: &'static str,
    title: &'static str,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn book(s: &[u64]) -> MixedGraph {
    book_graph(&BookParams::new(s.to_vec()).expect("valid parameters")).graph
}

const CHECKS: [Check; 12] = [
    Check { id: "guo-mohar", title: "Guo-Mohar graph at π/2 and its symbolic a3, a4", run: check_guo_mohar },
    Check { id: "oracle", title: "Berkowitz equals the elementary-subgraph expansion", run: check_oracle },
    Check { id: "bipartite", title: "bipartite graphs have symmetric spectra", run: check_bipartite },
    Check { id: "main-theorem", title: "counterexamples for every θ = lπ/m with m ≤ 8", run: check_main_theorem },
    Check { id: "perturbation", title: "G_3 loses symmetry off π/3", run: check_perturbation },
    Check { id: "coefficient-relation", title: "a_{2k-1} = (-1)^{k-m} M_k a_{2m-1} on G_m", run: check_relation },
    Check { id: "witnesses", title: "odd circumference m/2, m, m/2 + 1 witnesses for m ≤ 13", run: check_witnesses },
    Check { id: "minimality", title: "bounded minimality scans for p = 5, 7 and m = 9, 12", run: check_minimality },
    Check { id: "min-odd-circumference", title: "minimum odd circumference row for m = 3..13", run: check_min_odd_circumference },
    Check { id: "mohar", title: "Mohar's graph and G(2,1) share a characteristic polynomial", run: check_mohar },
    Check { id: "doubling", title: "doubling shifts the spectrum by ±1", run: check_doubling },
    Check { id: "cos-nonzero", title: "lowest odd coefficient is a nonzero polynomial in cos θ", run: check_cos_nonzero },
];

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

/// Runs the named checks (all when `only` is empty) in the fixed order.
pub fn run_checks(only: &[String]) -> Result<VerifyReport> {
    for id in only {
        if !CHECKS.iter().any(|c| c.id == id) {
            return Err(Error::invalid(format!(
                "unknown check {id:?}; known checks: {}",
                check_ids().join(", ")
            )));
        }
    }
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|o| o == c.id))
        .map(|c| {
            let start = Instant::now();
            let outcome = (c.run)();
            let seconds = start.elapsed().as_secs_f64();
            log::info!("{}: {} in {seconds:.2}s", c.id, if outcome.is_ok() { "pass" } else { "FAIL" });
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult {
                id: c.id,
                title: c.title,
                passed,
                detail,
                seconds,
            }
        })
        .collect();
    Ok(VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn check_guo_mohar() -> Outcome {
    let g = guo_mohar();
    let quarter = Angle::new(1, 2).map_err(err)?;
    let ring = CyclotomicRing::new(4).map_err(err)?;
    let at = charpoly_at_angle(&g, quarter).map_err(err)?;
    let expect: Vec<_> = [1, 0, -6, 0, 5].iter().map(|&c| ring.from_int(c)).collect();
    ensure(at == expect, || format!("charpoly at π/2 is {at:?}"))?;

    let spec = Spectrum::of(&g, quarter.radians()).map_err(err)?;
    let s5 = 5f64.sqrt();
    let want = [-s5, -1.0, 1.0, s5];
    ensure(
        spec.eigenvalues.iter().zip(&want).all(|(a, b)| (a - b).abs() < 1e-9),
        || format!("spectrum {:?}", spec.eigenvalues),
    )?;

    let c_sum = &(&chebyshev_t(1) + &chebyshev_t(2)) + &chebyshev_t(3);
    let a3 = (&CosPoly::constant(1) + &c_sum).scale(&BigInt::from(-2));
    let a4 = &CosPoly::constant(3) - &c_sum.scale(&BigInt::from(2));
    let got3 = coeff_in_cos(&g, 3).map_err(err)?;
    let got4 = coeff_in_cos(&g, 4).map_err(err)?;
    ensure(got3 == a3, || format!("a3 = {got3}, expected {a3}"))?;
    ensure(got4 == a4, || format!("a4 = {got4}, expected {a4}"))?;
    Ok(format!("x^4 - 6x^2 + 5 at π/2; a3 = {got3}; a4 = {got4}"))
}

fn named_small_graphs() -> Vec<(String, MixedGraph)> {
    let specs = [
        "guo-mohar", "mohar", "pi-example", "book 2,1", "book 1,1", "book 0,1", "book 3,1", "book 0,0,1", "book 1,0,1",
        "book 0,1,1", "book 0,0,0,1", "gm 2", "gm 3", "path 6:3", "double(book 0,1)", "double(guo-mohar)",
        "double(mohar)", "double(pi-example)",
    ];
    specs
        .iter()
        .map(|s| {
            let g = s.parse::<Construction>().and_then(|c| c.build()).expect("fixed spec").graph;
            (s.to_string(), g)
        })
        .filter(|(_, g)| g.n() <= 12)
        .collect()
}

fn check_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let random = 500;
    for i in 0..random {
        let n = rng.gen_range(1..=5);
        let g = random_mixed_graph(&mut rng, n, 0.7);
        ensure(charpoly_berkowitz(&g) == charpoly_elementary(&g), || {
            format!("random graph #{i} differs:\n{}", g.to_text())
        })?;
    }
    let named = named_small_graphs();
    for (name, g) in &named {
        ensure(charpoly_berkowitz(g) == charpoly_elementary(g), || format!("{name} differs"))?;
    }
    Ok(format!("{random} random graphs and {} named graphs agree", named.len()))
}

fn check_bipartite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut numeric = 0;
    let mut exact = 0;
    for i in 0..50 {
        let n = rng.gen_range(2..=10);
        let g = random_bipartite_graph(&mut rng, n, 0.6);
        ensure(g.is_bipartite(), || format!("generator produced a non-bipartite graph #{i}"))?;
        for _ in 0..10 {
            let theta = rng.gen_range(1e-3..=std::f64::consts::PI);
            ensure(is_symmetric_numeric(&g, theta, 1e-8).map_err(err)?, || {
                format!("graph #{i} not symmetric at θ = {theta}:\n{}", g.to_text())
            })?;
            numeric += 1;
        }
        for _ in 0..10 {
            let a = random_angle(&mut rng, 30);
            ensure(is_symmetric_at(&g, a).map_err(err)?, || {
                format!("graph #{i} not exactly symmetric at θ = {a}π")
            })?;
            exact += 1;
        }
    }
    Ok(format!("{numeric} numeric and {exact} exact checks on 50 bipartite graphs"))
}

fn irreducible(m: u64) -> impl Iterator<Item = u64> {
    (1..=m).filter(move |l| l.gcd(&m) == 1)
}

fn check_main_theorem() -> Outcome {
    let mut count = 0;
    for m in 1..=8 {
        for l in irreducible(m) {
            let g = counterexample_for(l, m).map_err(err)?.graph;
            ensure(!g.is_bipartite(), || format!("counterexample for {l}/{m} is bipartite"))?;
            ensure(is_symmetric_exact(&g, l, m).map_err(err)?, || {
                format!("counterexample for {l}/{m} is not symmetric")
            })?;
            count += 1;
        }
    }
    let g3 = g_m(3).map_err(err)?.graph;
    let a5 = charpoly_at_angle(&g3, Angle::new(1, 3).map_err(err)?).map_err(err)?[5].clone();
    ensure(a5.is_zero(), || format!("a5 of G_3 at π/3 is {a5}"))?;
    Ok(format!("{count} angles; a5(G_3) = 0 at π/3"))
}

fn check_perturbation() -> Outcome {
    let g3 = g_m(3).map_err(err)?.graph;
    let a5 = charpoly_berkowitz(&g3).coeff(5);
    let th = std::f64::consts::FRAC_PI_3;
    ensure(is_symmetric_numeric(&g3, th, 1e-8).map_err(err)?, || "not symmetric at π/3".into())?;
    let mut detail = Vec::new();
    for d in [-0.01, 0.01] {
        let v = a5.eval_numeric(th + d).map_err(err)?;
        ensure(!is_symmetric_numeric(&g3, th + d, 1e-8).map_err(err)?, || {
            format!("still symmetric at π/3 {d:+}")
        })?;
        ensure(v.abs() > 1e-6, || format!("a5(π/3 {d:+}) = {v}"))?;
        detail.push(format!("a5(π/3 {d:+}) = {v:.6}"));
    }
    Ok(detail.join("; "))
}

fn check_relation() -> Outcome {
    for m in 2..=4 {
        ensure(verify_coefficient_relation(m).map_err(err)?, || format!("relation fails on G_{m}"))?;
    }
    Ok("G_2, G_3, G_4".into())
}

fn check_witnesses() -> Outcome {
    let mut lines = Vec::new();
    for m in 3..=13u64 {
        let expected = match m % 4 {
            2 => m / 2,
            0 => m / 2 + 1,
            _ => m,
        } as usize;
        let g = counterexample_for(1, m).map_err(err)?.graph;
        let oc = g.odd_circumference();
        ensure(oc == Some(expected), || format!("m = {m}: odd circumference {oc:?}, expected {expected}"))?;
        ensure(!g.is_bipartite(), || format!("m = {m}: bipartite"))?;
        for l in [1, m - 1] {
            ensure(is_symmetric_exact(&g, l, m).map_err(err)?, || format!("m = {m}, l = {l}: not symmetric"))?;
        }
        lines.push(format!("{m}:{expected}"));
    }
    Ok(format!("odd circumferences {}", lines.join(" ")))
}

fn check_minimality() -> Outcome {
    let mut detail = Vec::new();
    for p in [5u64, 7] {
        let a = Angle::new(1, p).map_err(err)?;
        let below = scan_layer(a, (p as usize - 1) / 2, 2 * p);
        ensure(below.symmetric.is_empty(), || format!("p = {p}: symmetric {}", below.symmetric[0]))?;
        let at = scan_layer(a, (p as usize).div_ceil(2), 2 * p);
        let mut w = vec![2; (p as usize - 1) / 2];
        w.push(1);
        let first = at.symmetric.first().ok_or(format!("p = {p}: nothing symmetric at t = (p+1)/2"))?;
        ensure(first.sheet_count() == p && first.s() == w.as_slice(), || {
            format!("p = {p}: first symmetric tuple {first}")
        })?;
        ensure(at.symmetric.iter().all(|s| s.sheet_count() >= p), || format!("p = {p}: fewer than p sheets"))?;
        detail.push(format!("p = {p}: none at t = {}, minimum {first}", below.t));
    }
    let a9 = Angle::new(1, 9).map_err(err)?;
    ensure(is_symmetric_at(&book(&[1, 0, 1, 1]), a9).map_err(err)?, || "G(1,0,1,1) not symmetric at π/9".into())?;
    let l9 = scan_layer(a9, 3, 8);
    ensure(l9.symmetric.is_empty(), || format!("m = 9: symmetric {}", l9.symmetric[0]))?;
    let l12 = scan_layer(Angle::new(1, 12).map_err(err)?, 3, 12);
    ensure(l12.symmetric.is_empty(), || format!("m = 12: symmetric {}", l12.symmetric[0]))?;
    detail.push("m = 9: G(1,0,1,1) symmetric, t = 3 none".into());
    detail.push("m = 12: t = 3 none".into());
    Ok(detail.join("; "))
}

/// The published row for `m = 3..13`.
pub const MIN_ODD_CIRCUMFERENCE_ROW: [usize; 11] = [3, 3, 5, 3, 7, 5, 7, 5, 11, 7, 13];

fn check_min_odd_circumference() -> Outcome {
    let rows = min_odd_circumference_table(3, 13, None).map_err(err)?;
    let got: Vec<Option<usize>> = rows.iter().map(|r| r.min_odd_circumference()).collect();
    let want: Vec<Option<usize>> = MIN_ODD_CIRCUMFERENCE_ROW.iter().map(|&x| Some(x)).collect();
    ensure(got == want, || format!("row {got:?}"))?;
    for r in &rows {
        ensure(r.numerators_agree, || format!("m = {}: numerators disagree", r.m))?;
        let min = r.minimum.as_ref().expect("checked above");
        ensure(min.witness_verified, || format!("m = {}: witness {} failed the full check", r.m, min.witness))?;
    }
    let row: Vec<String> = MIN_ODD_CIRCUMFERENCE_ROW.iter().map(|x| x.to_string()).collect();
    Ok(format!("row {}", row.join(",")))
}

fn check_mohar() -> Outcome {
    let a = charpoly_berkowitz(&mohar_graph());
    let b = charpoly_berkowitz(&book(&[2, 1]));
    ensure(a == b, || "characteristic polynomials differ".into())?;
    ensure(charpoly_elementary(&mohar_graph()) == b, || "elementary expansion differs".into())?;
    Ok(format!("degree {} polynomial, {} nonzero coefficients", a.degree(), a.coeffs().iter().filter(|c| !c.is_zero()).count()))
}

fn check_doubling() -> Outcome {
    let g3 = g_m(3).map_err(err)?.graph;
    let d = double_proper(&g3);
    let th = std::f64::consts::FRAC_PI_3;
    let base = Spectrum::of(&g3, th).map_err(err)?.eigenvalues;
    let mut want: Vec<f64> = base.iter().flat_map(|l| [l - 1.0, l + 1.0]).collect();
    want.sort_by(f64::total_cmp);
    let got = Spectrum::of(&d, th).map_err(err)?.eigenvalues;
    let worst = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(worst < 1e-9, || format!("largest deviation {worst:e}"))?;
    ensure(d.is_proper(), || "not proper".into())?;
    ensure(!d.is_bipartite(), || "bipartite".into())?;
    ensure(is_symmetric_exact(&d, 1, 3).map_err(err)?, || "not symmetric at π/3".into())?;
    Ok(format!("{} eigenvalues, largest deviation {worst:.1e}", got.len()))
}

fn check_cos_nonzero() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut found = 0;
    let mut degrees = Vec::new();
    while found < 20 {
        let n = rng.gen_range(3..=8);
        let g = random_mixed_graph(&mut rng, n, 0.5);
        let Some(k) = g.odd_girth() else { continue };
        let f = coeff_in_cos(&g, k).map_err(err)?;
        ensure(!f.is_zero(), || format!("f_{k} vanishes for\n{}", g.to_text()))?;
        degrees.push(f.degree().unwrap_or(0));
        found += 1;
    }
    Ok(format!("20 graphs, degrees {degrees:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..30 {
            assert!(random_bipartite_graph(&mut rng, 9, 0.7).is_bipartite());
            let a = random_angle(&mut rng, 12);
            assert_eq!(a.numerator().gcd(&a.denominator()), 1);
        }
    }

    #[test]
    fn ids_are_unique_and_filtered() {
        let ids = check_ids();
        let set: std::collections::BTreeSet<_> = ids.iter().collect();
        assert_eq!(set.len(), 12);
        let r = run_checks(&["mohar".to_string()]).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert!(r.passed);
        assert!(run_checks(&["nope".to_string()]).is_err());
    }
}
