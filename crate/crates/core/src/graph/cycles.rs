use std::fmt;

use serde::Serialize;

use super::UndirectedGraph;
use crate::error::{Error, Result};

/// A simple cycle `(v_1, …, v_t)`, `t ≥ 3`, in canonical form: `v_1` is the
/// smallest vertex and `v_2 < v_t`. This fixes rotation and reflection, so
/// each undirected cycle has exactly one representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Canonicalizes a cyclic vertex sequence. Adjacency is not checked here.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::NotACycle(format!(
                "{vertices:?} has fewer than 3 vertices"
            )));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotACycle(format!("{vertices:?} repeats a vertex")));
        }
        let start = vertices
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map(|(i, _)| i)
            .expect("non-empty");
        vertices.rotate_left(start);
        if vertices[1] > vertices[vertices.len() - 1] {
            vertices[1..].reverse();
        }
        Ok(Cycle { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Consecutive pairs in canonical direction, closing back to the start.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let t = self.vertices.len();
        (0..t).map(move |i| (self.vertices[i], self.vertices[(i + 1) % t]))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Depth-first search from each start vertex `s` through vertices larger
/// than `s`; a cycle is recorded when the path closes at `s` and its second
/// vertex is smaller than its last.
pub(super) fn enumerate(g: &UndirectedGraph, max_len: Option<usize>) -> Vec<Cycle> {
    let limit = max_len.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if limit < 3 {
        return out;
    }
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        let mut path = vec![s];
        on_path[s] = true;
        extend(g, s, &mut path, &mut on_path, limit, &mut out);
        on_path[s] = false;
    }
    out
}

fn extend(
    g: &UndirectedGraph,
    s: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    limit: usize,
    out: &mut Vec<Cycle>,
) {
    let u = *path.last().expect("path starts at s");
    for w in g.neighbors(u) {
        if w == s {
            if path.len() >= 3 && path[1] < u {
                out.push(Cycle {
                    vertices: path.clone(),
                });
            }
        } else if w > s && !on_path[w] && path.len() < limit {
            on_path[w] = true;
            path.push(w);
            extend(g, s, path, on_path, limit, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn canonical_form() {
        let c = Cycle::new(vec![3, 1, 2]).unwrap();
        assert_eq!(c.vertices(), &[1, 2, 3]);
        let d = Cycle::new(vec![2, 1, 3]).unwrap();
        assert_eq!(c, d);
        let e = Cycle::new(vec![5, 0, 4, 2]).unwrap();
        assert_eq!(e.vertices(), &[0, 4, 2, 5]);
        assert!(Cycle::new(vec![0, 1]).is_err());
        assert!(Cycle::new(vec![0, 1, 0]).is_err());
    }

    #[test]
    fn complete_graph_cycle_counts() {
        // K5: 10 triangles, 15 quadrilaterals, 12 pentagons
        let edges = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)));
        let g = UndirectedGraph::from_edges(5, edges).unwrap();
        let cs = enumerate(&g, None);
        let count = |l| cs.iter().filter(|c| c.len() == l).count();
        assert_eq!((count(3), count(4), count(5)), (10, 15, 12));
        let unique: HashSet<_> = cs.iter().collect();
        assert_eq!(unique.len(), cs.len());
        for c in &cs {
            assert_eq!(&Cycle::new(c.vertices().to_vec()).unwrap(), c);
        }
        assert_eq!(enumerate(&g, Some(4)).len(), 25);
        assert!(enumerate(&g, Some(2)).is_empty());
    }
}
