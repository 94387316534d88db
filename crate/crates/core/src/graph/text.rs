//! Line-oriented graph text format:
//!
//! ```text
//! # comment
//! n 4
//! a 0 1      single arc 0 → 1
//! d 1 2      digon between 1 and 2
//! ```
//!
//! Blank lines and `#` comments are ignored. The `n` line must precede every
//! arc. Writing `a u v` and `a v u` is accepted as a digon with a warning.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{MixedGraph, PairKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: MixedGraph,
    pub warnings: Vec<String>,
    /// Comment lines (without the leading `#`), in order.
    pub comments: Vec<String>,
}

pub fn parse_graph(input: &str) -> Result<ParsedGraph> {
    let mut graph: Option<MixedGraph> = None;
    let mut single: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut warnings = Vec::new();
    let mut comments = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| Error::Parse { line, message };
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (raw, None),
        };
        if let Some(c) = comment {
            comments.push(c.trim().to_string());
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| err(format!("bad integer {s:?}: {e}")))
        };
        match fields.as_slice() {
            ["n", count] => {
                if graph.is_some() {
                    return Err(err("duplicate `n` line".into()));
                }
                graph = Some(MixedGraph::new(num(count)?));
            }
            [kind @ ("a" | "d"), u, v] => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| err("arc before the `n` line".into()))?;
                let (u, v) = (num(u)?, num(v)?);
                let located = |e: Error| err(e.to_string());
                if *kind == "d" {
                    g.add_digon(u, v).map_err(located)?;
                } else {
                    if single.contains(&(v, u)) {
                        warnings.push(format!(
                            "line {line}: arcs {v}→{u} and {u}→{v} normalized to a digon"
                        ));
                    }
                    g.add_arc(u, v).map_err(located)?;
                    single.insert((u, v));
                }
            }
            _ => return Err(err(format!("unrecognized line {:?}", body.trim()))),
        }
    }

    let graph = graph.ok_or(Error::Parse {
        line: input.lines().count().max(1),
        message: "missing `n` line".into(),
    })?;
    Ok(ParsedGraph {
        graph,
        warnings,
        comments,
    })
}

impl MixedGraph {
    /// Text form: the `n` line, then one line per adjacent pair `u < v`.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (u, v) in self.arcs() {
            pairs.insert((u.min(v), u.max(v)));
        }
        for (u, v) in pairs {
            let _ = match self.pair_kind(u, v) {
                PairKind::Digon => writeln!(out, "d {u} {v}"),
                PairKind::Forward => writeln!(out, "a {u} {v}"),
                PairKind::Backward => writeln!(out, "a {v} {u}"),
                PairKind::None => Ok(()),
            };
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_arcs_digons_and_comments() {
        let src = "# Guo–Mohar\nn 4\n\nd 0 1\na 2 1  # trailing\na 3 2\na 3 0\na 2 0\na 1 3\n";
        let p = parse_graph(src).unwrap();
        assert_eq!(p.graph.n(), 4);
        assert_eq!(p.graph.digons().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(p.graph.underlying().edge_count(), 6);
        assert_eq!(p.comments, vec!["Guo–Mohar", "trailing"]);
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn opposite_arcs_become_digon_with_warning() {
        let p = parse_graph("n 2\na 0 1\na 1 0\n").unwrap();
        assert_eq!(p.graph.digons().count(), 1);
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_graph("n 3\na 0 1\na 0 7\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_graph("a 0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_graph("n 3\nx 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_graph("n 3\na 1 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(parse_graph("# nothing\n").is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut g = MixedGraph::from_arcs(5, [(0, 1), (3, 2), (4, 0)]).unwrap();
        g.add_digon(1, 4).unwrap();
        let back = parse_graph(&g.to_text()).unwrap().graph;
        assert_eq!(back, g);
    }

    #[test]
    fn empty_graph() {
        let p = parse_graph("n 0\n").unwrap();
        assert_eq!(p.graph.n(), 0);
        assert_eq!(p.graph.to_text(), "n 0\n");
    }
}
