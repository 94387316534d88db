//! Elementary subgraphs and the coefficient expansion over them.
//!
//! An elementary subgraph has only `K_2` and cycle components. Writing
//! `det(xI - H_θ) = Σ a_j x^{n-j}`,
//!
//! ```text
//! a_j = Σ_{H on j vertices} (-1)^{p(H)} 2^{|C(H)|} ∏_{C ∈ C(H)} re(C)
//! ```
//!
//! where `p(H)` counts components. Here `2·re(C) = z^k + z^{-k}` with `k` the
//! cycle flux, so `2^{|C(H)|} ∏ re(C)` is the product of the doubled values
//! and all arithmetic stays in `ℤ[z, z^{-1}]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Cycle, MixedGraph, UndirectedGraph};
use crate::rings::LaurentPoly;

use super::CharPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ElementarySubgraph {
    /// Disjoint `K_2` components `(u, v)`, `u < v`.
    pub edges: Vec<(usize, usize)>,
    pub cycles: Vec<Cycle>,
}

impl ElementarySubgraph {
    /// `p(H)`
    pub fn component_count(&self) -> usize {
        self.edges.len() + self.cycles.len()
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.edges.len() + self.cycles.iter().map(Cycle::len).sum::<usize>()
    }
}

/// Visits every elementary subgraph, optionally only those on exactly
/// `target` vertices.
///
/// The lowest undecided vertex `v` is either left out, matched to a larger
/// free neighbour, or made the smallest vertex of a cycle through larger free
/// vertices. Each subgraph is produced exactly once.
fn visit(g: &UndirectedGraph, target: Option<usize>, f: &mut dyn FnMut(&ElementarySubgraph)) {
    let mut state = Walk {
        g,
        target,
        covered: vec![false; g.n()],
        used: 0,
        current: ElementarySubgraph {
            edges: vec![],
            cycles: vec![],
        },
    };
    state.step(0, f);
}

struct Walk<'a> {
    g: &'a UndirectedGraph,
    target: Option<usize>,
    covered: Vec<bool>,
    used: usize,
    current: ElementarySubgraph,
}

impl Walk<'_> {
    fn step(&mut self, from: usize, f: &mut dyn FnMut(&ElementarySubgraph)) {
        let n = self.g.n();
        let Some(v) = (from..n).find(|&v| !self.covered[v]) else {
            if self.target.is_none_or(|t| t == self.used) {
                f(&self.current);
            }
            return;
        };
        if let Some(t) = self.target {
            let free = (v..n).filter(|&u| !self.covered[u]).count();
            if self.used > t || self.used + free < t {
                return;
            }
            if self.used == t {
                f(&self.current);
                return;
            }
        }

        // leave v out
        self.step(v + 1, f);

        self.covered[v] = true;
        // match v
        let nbrs: Vec<usize> = self.g.neighbors(v).filter(|&w| w > v).collect();
        for &w in &nbrs {
            if self.covered[w] {
                continue;
            }
            self.covered[w] = true;
            self.used += 2;
            self.current.edges.push((v, w));
            self.step(v + 1, f);
            self.current.edges.pop();
            self.used -= 2;
            self.covered[w] = false;
        }
        // cycles with minimum vertex v
        let mut path = vec![v];
        self.grow_cycle(v, &mut path, f);
        self.covered[v] = false;
    }

    fn grow_cycle(&mut self, v: usize, path: &mut Vec<usize>, f: &mut dyn FnMut(&ElementarySubgraph)) {
        let u = *path.last().expect("path starts at v");
        let limit = self.target.map_or(usize::MAX, |t| t - self.used);
        let nbrs: Vec<usize> = self.g.neighbors(u).collect();
        for w in nbrs {
            if w == v {
                if path.len() >= 3 && path[1] < u {
                    let len = path.len();
                    self.used += len;
                    self.current.cycles.push(Cycle::new(path.clone()).expect("simple cycle"));
                    self.step(v + 1, f);
                    self.current.cycles.pop();
                    self.used -= len;
                }
            } else if w > v && !self.covered[w] && path.len() < limit {
                self.covered[w] = true;
                path.push(w);
                self.grow_cycle(v, path, f);
                path.pop();
                self.covered[w] = false;
            }
        }
    }
}

/// All elementary subgraphs spanning exactly `j` vertices.
pub fn elementary_subgraphs(g: &MixedGraph, j: usize) -> Result<Vec<ElementarySubgraph>> {
    if j > g.n() {
        return Err(Error::invalid(format!(
            "j = {j} exceeds the vertex count {}",
            g.n()
        )));
    }
    let mut out = Vec::new();
    visit(&g.underlying(), Some(j), &mut |h| out.push(h.clone()));
    Ok(out)
}

/// `2·re(C) = z^k + z^{-k}` where `k` is the flux of `C`.
pub fn re_cycle(g: &MixedGraph, c: &Cycle) -> Result<LaurentPoly> {
    Ok(LaurentPoly::two_cos(g.cycle_flux(c)?))
}

/// Characteristic polynomial by summing over all elementary subgraphs.
/// Exponential in general; an independent check on [`super::charpoly_berkowitz`].
pub fn charpoly_elementary(g: &MixedGraph) -> CharPoly {
    let n = g.n();
    let mut coeffs = vec![LaurentPoly::zero(); n + 1];
    visit(&g.underlying(), None, &mut |h| {
        let mut term = LaurentPoly::constant(if h.component_count() % 2 == 0 { 1 } else { -1 });
        for c in &h.cycles {
            let w = re_cycle(g, c).expect("enumerated cycles lie in the graph");
            term = &term * &w;
        }
        coeffs[h.vertex_count()] += &term;
    });
    CharPoly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn guo_mohar() -> MixedGraph {
        let mut g = MixedGraph::from_arcs(4, [(2, 1), (3, 2), (3, 0), (2, 0), (1, 3)]).unwrap();
        g.add_digon(0, 1).unwrap();
        g
    }

    #[test]
    fn no_single_vertex_subgraphs() {
        assert!(elementary_subgraphs(&guo_mohar(), 1).unwrap().is_empty());
    }

    #[test]
    fn guo_mohar_counts() {
        let h3 = elementary_subgraphs(&guo_mohar(), 3).unwrap();
        assert_eq!(h3.len(), 4);
        assert!(h3.iter().all(|h| h.cycles.len() == 1 && h.edges.is_empty()));
        // 3 four-cycles plus 3 perfect matchings of K4
        let h4 = elementary_subgraphs(&guo_mohar(), 4).unwrap();
        assert_eq!(h4.len(), 6);
        assert_eq!(h4.iter().filter(|h| h.cycles.len() == 1).count(), 3);
        assert_eq!(elementary_subgraphs(&guo_mohar(), 2).unwrap().len(), 6);
        assert_eq!(elementary_subgraphs(&guo_mohar(), 0).unwrap().len(), 1);
        assert!(elementary_subgraphs(&guo_mohar(), 5).is_err());
    }

    #[test]
    fn path_matchings() {
        // P_3 + P_3: 4 edges, 4 two-edge matchings taking one edge from each path
        let g = MixedGraph::from_arcs(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert_eq!(elementary_subgraphs(&g, 2).unwrap().len(), 4);
        assert_eq!(elementary_subgraphs(&g, 4).unwrap().len(), 4);
        assert!(elementary_subgraphs(&g, 6).unwrap().is_empty());
    }

    #[test]
    fn guo_mohar_coefficients() {
        let p = charpoly_elementary(&guo_mohar());
        let cos_sum =
            LaurentPoly::two_cos(1) + LaurentPoly::two_cos(2) + LaurentPoly::two_cos(3);
        assert_eq!(p.coeff(3), -(&cos_sum + &LaurentPoly::constant(2)));
        assert_eq!(p.coeff(4), &LaurentPoly::constant(3) - &cos_sum);
        assert_eq!(p.coeff(2), LaurentPoly::constant(-6));
        assert!(p.coeff(1).is_zero());
    }

    #[test]
    fn forests_have_no_odd_coefficients() {
        let g = MixedGraph::from_arcs(7, [(0, 1), (2, 1), (1, 3), (4, 3), (5, 6)]).unwrap();
        let p = charpoly_elementary(&g);
        for j in (1..=7).step_by(2) {
            assert!(p.coeff(j).is_zero());
        }
    }

    #[test]
    fn re_of_cycles() {
        let t = MixedGraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = &t.enumerate_cycles(None)[0];
        assert_eq!(re_cycle(&t, c).unwrap(), LaurentPoly::two_cos(3));
        let mut d = MixedGraph::new(3);
        for (u, v) in [(0, 1), (1, 2), (2, 0)] {
            d.add_digon(u, v).unwrap();
        }
        assert_eq!(re_cycle(&d, c).unwrap(), LaurentPoly::constant(2));
    }
}
