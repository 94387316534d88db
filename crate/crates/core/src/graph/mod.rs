//! Mixed graphs and structural queries on their underlying graphs.
//!
//! Vertices are the dense integers `0..n`. An arc `(u, v)` points from `u`
//! to `v`; when both `(u, v)` and `(v, u)` are present the pair is a digon
//! and behaves like an undirected edge.

mod cycles;
mod text;

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

pub use cycles::Cycle;
pub use text::{parse_graph, ParsedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    None,
    Digon,
    /// `u → v` only.
    Forward,
    /// `v → u` only.
    Backward,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct MixedGraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl MixedGraph {
    pub fn new(n: usize) -> Self {
        MixedGraph {
            n,
            arcs: BTreeSet::new(),
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::new(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.arcs.insert((u, v));
        Ok(())
    }

    pub fn add_digon(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_arc(u, v)?;
        self.add_arc(v, u)
    }

    /// Appends `k` isolated vertices and returns the index of the first.
    pub fn add_vertices(&mut self, k: usize) -> usize {
        let first = self.n;
        self.n += k;
        first
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn classify_pair(&self, u: usize, v: usize) -> Result<PairKind> {
        self.check_pair(u, v)?;
        Ok(self.pair_kind(u, v))
    }

    /// [`MixedGraph::classify_pair`] without range checks; `u == v` gives `None`.
    pub(crate) fn pair_kind(&self, u: usize, v: usize) -> PairKind {
        match (self.has_arc(u, v), self.has_arc(v, u)) {
            (true, true) => PairKind::Digon,
            (true, false) => PairKind::Forward,
            (false, true) => PairKind::Backward,
            (false, false) => PairKind::None,
        }
    }

    /// Unordered digon pairs `(u, v)` with `u < v`.
    pub fn digons(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs
            .iter()
            .filter(|&&(u, v)| u < v && self.arcs.contains(&(v, u)))
            .copied()
    }

    /// Arcs whose reverse is absent.
    pub fn single_arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs
            .iter()
            .filter(|&&(u, v)| !self.arcs.contains(&(v, u)))
            .copied()
    }

    /// No digons.
    pub fn is_oriented(&self) -> bool {
        self.digons().next().is_none()
    }

    /// At least one digon.
    pub fn is_proper(&self) -> bool {
        !self.is_oriented()
    }

    /// The same graph with every arc reversed.
    pub fn reversed(&self) -> Self {
        MixedGraph {
            n: self.n,
            arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }

    pub fn underlying(&self) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(self.n);
        for &(u, v) in &self.arcs {
            g.insert(u, v);
        }
        g
    }

    /// A proper 2-colouring of the underlying graph, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        self.underlying().bipartition()
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Every simple cycle (length ≥ 3) of the underlying graph, canonical and
    /// unique, optionally bounded in length.
    pub fn enumerate_cycles(&self, max_len: Option<usize>) -> Vec<Cycle> {
        cycles::enumerate(&self.underlying(), max_len)
    }

    /// Length of the longest odd cycle; `None` when the graph is bipartite.
    pub fn odd_circumference(&self) -> Option<usize> {
        self.enumerate_cycles(None)
            .iter()
            .map(Cycle::len)
            .filter(|l| l % 2 == 1)
            .max()
    }

    /// Length of the longest cycle; `None` for forests.
    pub fn circumference(&self) -> Option<usize> {
        self.enumerate_cycles(None).iter().map(Cycle::len).max()
    }

    /// Length of the shortest odd cycle, found by breadth-first search.
    pub fn odd_girth(&self) -> Option<usize> {
        self.underlying().odd_girth()
    }

    /// Net number of single arcs traversed forwards along `c` in its
    /// canonical direction; the flux of `c` is this multiple of θ.
    pub fn cycle_flux(&self, c: &Cycle) -> Result<i64> {
        let mut flux = 0;
        for (u, v) in c.edges() {
            match self.pair_kind(u, v) {
                PairKind::Forward => flux += 1,
                PairKind::Backward => flux -= 1,
                PairKind::Digon => {}
                PairKind::None => {
                    return Err(Error::NotACycle(format!("{c}: no edge {{{u}, {v}}}")))
                }
            }
        }
        Ok(flux)
    }

    /// Subgraph induced by the complement of `removed`, renumbered in
    /// increasing order of the kept vertices.
    pub fn remove_vertices(&self, removed: &[usize]) -> MixedGraph {
        let mut keep = vec![true; self.n];
        for &v in removed {
            if v < self.n {
                keep[v] = false;
            }
        }
        let mut index = vec![usize::MAX; self.n];
        let mut k = 0;
        for v in 0..self.n {
            if keep[v] {
                index[v] = k;
                k += 1;
            }
        }
        MixedGraph {
            n: k,
            arcs: self
                .arcs
                .iter()
                .filter(|&&(u, v)| keep[u] && keep[v])
                .map(|&(u, v)| (index[u], index[v]))
                .collect(),
        }
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl UndirectedGraph {
    pub fn new(n: usize) -> Self {
        UndirectedGraph {
            n,
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    fn insert(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued vertices are coloured");
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// Shortest odd closed walk length, which equals the shortest odd cycle.
    pub fn odd_girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    } else if dist[v] == dist[u] {
                        let len = 2 * dist[u] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// True iff the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.component_count() == self.n
    }

    /// Canonical form of a forest: the sorted AHU codes of its trees, each
    /// rooted at its centre (the lexicographically smaller code when there
    /// are two centres). Two forests are isomorphic iff the forms agree.
    /// `None` when the graph has a cycle.
    pub fn forest_canonical_form(&self) -> Option<Vec<String>> {
        if !self.is_forest() {
            return None;
        }
        let mut seen = vec![false; self.n];
        let mut codes = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut verts = vec![];
            while let Some(u) = stack.pop() {
                verts.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            let code = self
                .tree_centres(&verts)
                .into_iter()
                .map(|c| self.ahu_code(c, usize::MAX))
                .min()
                .expect("every tree has a centre");
            codes.push(code);
        }
        codes.sort();
        Some(codes)
    }

    fn tree_centres(&self, verts: &[usize]) -> Vec<usize> {
        if verts.len() <= 2 {
            return verts.to_vec();
        }
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut leaves: Vec<usize> = verts.iter().copied().filter(|&v| deg[v] <= 1).collect();
        let mut remaining = verts.len();
        while remaining > 2 {
            remaining -= leaves.len();
            let mut next = vec![];
            for &leaf in &leaves {
                for &v in &self.adj[leaf] {
                    if deg[v] > 1 {
                        deg[v] -= 1;
                        if deg[v] == 1 {
                            next.push(v);
                        }
                    }
                }
                deg[leaf] = 0;
            }
            leaves = next;
        }
        leaves
    }

    fn ahu_code(&self, v: usize, parent: usize) -> String {
        let mut children: Vec<String> = self.adj[v]
            .iter()
            .filter(|&&c| c != parent)
            .map(|&c| self.ahu_code(c, v))
            .collect();
        children.sort();
        format!("({})", children.concat())
    }
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
    fn underlying_merges_digons() {
        let g = MixedGraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(g.underlying().edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let d = MixedGraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(d.underlying().edge_count(), 1);
        assert_eq!(guo_mohar().underlying().edge_count(), 6);
    }

    #[test]
    fn pair_classification() {
        let g = MixedGraph::from_arcs(3, [(0, 1)]).unwrap();
        assert_eq!(g.classify_pair(0, 1).unwrap(), PairKind::Forward);
        assert_eq!(g.classify_pair(1, 0).unwrap(), PairKind::Backward);
        assert_eq!(g.classify_pair(0, 2).unwrap(), PairKind::None);
        let d = MixedGraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(d.classify_pair(0, 1).unwrap(), PairKind::Digon);
        assert!(matches!(
            g.classify_pair(0, 3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(g.classify_pair(1, 1), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn rejects_bad_arcs() {
        assert!(MixedGraph::from_arcs(2, [(0, 0)]).is_err());
        assert!(MixedGraph::from_arcs(2, [(0, 2)]).is_err());
    }

    #[test]
    fn bipartiteness() {
        let path = MixedGraph::from_arcs(6, (0..5).map(|i| (i, i + 1))).unwrap();
        let colors = path.bipartition().unwrap();
        for (u, v) in path.arcs() {
            assert_ne!(colors[u], colors[v]);
        }
        assert!(!guo_mohar().is_bipartite());
        assert!(MixedGraph::new(0).is_bipartite());
    }

    #[test]
    fn cycles_of_guo_mohar() {
        let cs = guo_mohar().enumerate_cycles(None);
        assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cs.iter().filter(|c| c.len() == 4).count(), 3);
        assert_eq!(guo_mohar().enumerate_cycles(Some(3)).len(), 4);
    }

    #[test]
    fn odd_circumference_and_girth() {
        let c4 = MixedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.odd_circumference(), None);
        assert_eq!(c4.circumference(), Some(4));
        assert_eq!(c4.odd_girth(), None);
        assert_eq!(guo_mohar().odd_circumference(), Some(3));
        assert_eq!(guo_mohar().odd_girth(), Some(3));
    }

    #[test]
    fn flux_of_directed_triangle() {
        let g = MixedGraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let cs = g.enumerate_cycles(None);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].vertices(), &[0, 1, 2]);
        assert_eq!(g.cycle_flux(&cs[0]).unwrap(), 3);
        assert_eq!(g.reversed().cycle_flux(&cs[0]).unwrap(), -3);
        let missing = Cycle::new(vec![0, 1, 3]).unwrap();
        assert!(g.cycle_flux(&missing).is_err());
    }

    #[test]
    fn flux_ignores_digons() {
        let mut g = MixedGraph::new(3);
        g.add_digon(0, 1).unwrap();
        g.add_digon(1, 2).unwrap();
        g.add_digon(2, 0).unwrap();
        let c = &g.enumerate_cycles(None)[0];
        assert_eq!(g.cycle_flux(c).unwrap(), 0);
    }

    #[test]
    fn vertex_removal_renumbers() {
        let g = MixedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.remove_vertices(&[1]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.arcs().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn forest_checks() {
        let g = MixedGraph::from_arcs(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let u = g.underlying();
        assert!(u.is_forest());
        assert_eq!(u.component_count(), 2);
        assert!(!guo_mohar().underlying().is_forest());
        assert!(guo_mohar().underlying().forest_canonical_form().is_none());
    }

    #[test]
    fn forest_isomorphism() {
        // P4 + K1 vs K1 + P4 with different labels
        let a = UndirectedGraph::from_edges(5, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = UndirectedGraph::from_edges(5, [(4, 2), (2, 0), (0, 1)]).unwrap();
        assert_eq!(a.forest_canonical_form(), b.forest_canonical_form());
        // P4 vs star K_{1,3}
        let star = UndirectedGraph::from_edges(5, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(a.forest_canonical_form(), star.forest_canonical_form());
    }
}
