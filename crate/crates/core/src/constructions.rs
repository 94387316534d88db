//! Builders for oriented paths, book graphs `G(s_1, …, s_t)`, `G_m`, the
//! doubling construction and a few small named examples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::MixedGraph;

/// Sheet multiplicities `(s_1, …, s_t)` of a book graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BookParams {
    s: Vec<u64>,
}

impl BookParams {
    pub fn new(s: Vec<u64>) -> Result<Self> {
        if s.len() < 2 {
            return Err(Error::invalid(format!(
                "a book graph needs t >= 2 sheet classes, got {}",
                s.len()
            )));
        }
        if s.iter().all(|&x| x == 0) {
            return Err(Error::invalid("a book graph needs at least one sheet"));
        }
        Ok(BookParams { s })
    }

    pub fn s(&self) -> &[u64] {
        &self.s
    }

    pub fn t(&self) -> usize {
        self.s.len()
    }

    pub fn sheet_count(&self) -> u64 {
        self.s.iter().sum()
    }

    pub fn vertex_count(&self) -> usize {
        2 + (2 * self.t() - 3) * self.sheet_count() as usize
    }

    /// Length of every odd cycle.
    pub fn odd_circumference(&self) -> usize {
        2 * self.t() - 1
    }
}

impl fmt::Display for BookParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(")?;
        for (i, s) in self.s.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// A graph together with names for the vertices playing a role in its
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    pub graph: MixedGraph,
    pub labels: BTreeMap<String, usize>,
}

impl LabeledGraph {
    fn unlabeled(graph: MixedGraph) -> Self {
        LabeledGraph {
            graph,
            labels: BTreeMap::new(),
        }
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }
}

/// Adds the arcs of `P_m^{(a, m-1-a)}` along `path`: the first `a` arcs point
/// away from `path[0]`, the rest point back toward `path[a]`.
fn add_oriented_path(g: &mut MixedGraph, path: &[usize], a: usize) -> Result<()> {
    for (i, w) in path.windows(2).enumerate() {
        if i < a {
            g.add_arc(w[0], w[1])?;
        } else {
            g.add_arc(w[1], w[0])?;
        }
    }
    Ok(())
}

/// `P_m^{(a, m-1-a)}` on vertices `p1, …, pm`.
pub fn oriented_path(m: usize, a: usize) -> Result<LabeledGraph> {
    if m == 0 {
        return Err(Error::invalid("a path needs at least one vertex"));
    }
    if a >= m {
        return Err(Error::invalid(format!("need 0 <= a <= {}, got a = {a}", m - 1)));
    }
    let mut g = MixedGraph::new(m);
    let path: Vec<usize> = (0..m).collect();
    add_oriented_path(&mut g, &path, a)?;
    let labels = (0..m).map(|i| (format!("p{}", i + 1), i)).collect();
    Ok(LabeledGraph { graph: g, labels })
}

/// `G(s_1, …, s_t)`.
///
/// Vertex `0` is `x`, vertex `1` is `y`, and each sheet `z_j^(k)` adds, in
/// order, `z`, the interior of its `x`-path and the interior of its `y`-path.
/// The `x`-path is `P_t^{(0, t-1)}` from `x` to `z` and the `y`-path is
/// `P_t^{(j-1, t-j)}` from `y` to `z`.
pub fn book_graph(p: &BookParams) -> LabeledGraph {
    let t = p.t();
    let mut g = MixedGraph::new(2);
    let mut labels = BTreeMap::from([("x".to_string(), 0), ("y".to_string(), 1)]);
    g.add_arc(0, 1).expect("x, y exist");
    for (jj, &s) in p.s().iter().enumerate() {
        let j = jj + 1;
        for k in 1..=s {
            let name = format!("z{j}^({k})");
            let z = g.add_vertices(1);
            let xi = g.add_vertices(t - 2);
            let yi = g.add_vertices(t - 2);
            let mut xpath = vec![0];
            let mut ypath = vec![1];
            for i in 0..t - 2 {
                xpath.push(xi + i);
                ypath.push(yi + i);
                labels.insert(format!("{name}.x{}", i + 2), xi + i);
                labels.insert(format!("{name}.y{}", i + 2), yi + i);
            }
            xpath.push(z);
            ypath.push(z);
            labels.insert(name, z);
            add_oriented_path(&mut g, &xpath, 0).expect("fresh vertices");
            add_oriented_path(&mut g, &ypath, j - 1).expect("fresh vertices");
        }
    }
    debug_assert_eq!(g.n(), p.vertex_count());
    LabeledGraph { graph: g, labels }
}

/// `G_m = G(1, …, 1)` with `m` ones; `2m² - 3m + 2` vertices.
pub fn g_m(m: usize) -> Result<LabeledGraph> {
    if m < 2 {
        return Err(Error::invalid(format!("G_m needs m >= 2, got {m}")));
    }
    Ok(book_graph(&BookParams::new(vec![1; m])?))
}

/// Two copies of `g` with a digon between each vertex `i` and its copy
/// `i + n`, so that `H` becomes `[[H, I], [I, H]]`.
pub fn double_proper(g: &MixedGraph) -> MixedGraph {
    let n = g.n();
    let mut d = MixedGraph::new(2 * n);
    for (u, v) in g.arcs() {
        d.add_arc(u, v).expect("in range");
        d.add_arc(u + n, v + n).expect("in range");
    }
    for i in 0..n {
        d.add_digon(i, i + n).expect("in range");
    }
    d
}

/// Four vertices, one digon, symmetric at `θ = π/2`.
pub fn guo_mohar() -> MixedGraph {
    let mut g = MixedGraph::from_arcs(4, [(2, 1), (3, 2), (3, 0), (2, 0), (1, 3)])
        .expect("fixed arcs");
    g.add_digon(0, 1).expect("fixed digon");
    g
}

/// Mohar's oriented graph on five vertices: two triangles `0 1 2` and
/// `1 2 3`-`4` sharing the edge `1 2`.
pub fn mohar_graph() -> MixedGraph {
    MixedGraph::from_arcs(5, [(0, 1), (2, 0), (1, 2), (1, 3), (2, 3), (4, 1), (4, 2)])
        .expect("fixed arcs")
}

/// `K_4` minus an edge with a single arc; symmetric at `θ = π`.
pub fn pi_example() -> MixedGraph {
    let mut g = MixedGraph::from_arcs(4, [(0, 1)]).expect("fixed arc");
    for (u, v) in [(1, 2), (2, 3), (3, 0), (0, 2)] {
        g.add_digon(u, v).expect("fixed digon");
    }
    g
}

/// A parsed construction expression.
///
/// ```text
/// book 2,2,1 | gm 4 | path 6:3 | guo-mohar | mohar | pi-example | double(<spec>)
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Book(BookParams),
    Gm(usize),
    Path { m: usize, a: usize },
    GuoMohar,
    Mohar,
    PiExample,
    Double(Box<Construction>),
}

impl Construction {
    pub fn build(&self) -> Result<LabeledGraph> {
        Ok(match self {
            Construction::Book(p) => book_graph(p),
            Construction::Gm(m) => g_m(*m)?,
            Construction::Path { m, a } => oriented_path(*m, *a)?,
            Construction::GuoMohar => LabeledGraph::unlabeled(guo_mohar()),
            Construction::Mohar => LabeledGraph::unlabeled(mohar_graph()),
            Construction::PiExample => LabeledGraph::unlabeled(pi_example()),
            Construction::Double(inner) => {
                let base = inner.build()?;
                let n = base.graph.n();
                let mut labels = base.labels.clone();
                for (k, &v) in &base.labels {
                    labels.insert(format!("{k}'"), v + n);
                }
                LabeledGraph {
                    graph: double_proper(&base.graph),
                    labels,
                }
            }
        })
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::invalid(format!("bad {what} {s:?}")))
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("double(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::invalid(format!("unbalanced parentheses in {spec:?}")))?;
            return Ok(Construction::Double(Box::new(inner.parse()?)));
        }
        let (head, args) = match spec.split_once(char::is_whitespace) {
            Some((h, a)) => (h, a.trim()),
            None => (spec, ""),
        };
        let no_args = |c: Construction| {
            if args.is_empty() {
                Ok(c)
            } else {
                Err(Error::invalid(format!("{head} takes no arguments")))
            }
        };
        match head {
            "book" => {
                let s = args
                    .split(',')
                    .map(|x| x.trim().parse::<u64>().map_err(|_| Error::invalid(format!("bad sheet count {x:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Construction::Book(BookParams::new(s)?))
            }
            "gm" => Ok(Construction::Gm(parse_usize(args, "m")?)),
            "path" => {
                let (m, a) = args
                    .split_once(':')
                    .ok_or_else(|| Error::invalid("path expects m:a"))?;
                Ok(Construction::Path {
                    m: parse_usize(m, "m")?,
                    a: parse_usize(a, "a")?,
                })
            }
            "guo-mohar" => no_args(Construction::GuoMohar),
            "mohar" => no_args(Construction::Mohar),
            "pi-example" => no_args(Construction::PiExample),
            _ => Err(Error::invalid(format!("unknown construction {spec:?}"))),
        }
    }
}
