//! Symmetric spectra of θ-Hermitian adjacency matrices of mixed graphs.
//!
//! A mixed graph carries arcs and digons. For an angle θ its Hermitian
//! adjacency matrix has `1` on digons, `e^{iθ}` on forward arcs and
//! `e^{-iθ}` on backward arcs. This crate decides whether that spectrum is
//! symmetric about the origin, both exactly (cyclotomic arithmetic, for
//! θ = lπ/m) and numerically (a complex Jacobi eigensolver), and builds the
//! oriented book graphs `G(s_1, …, s_t)` that are non-bipartite yet have a
//! symmetric spectrum for every θ ∈ ℚπ.
//!
//! Module map:
//!
//! * [`graph`]: mixed graphs, cycles, bipartiteness, cycle flux
//! * [`rings`]: Laurent polynomials in `z = e^{iθ}`, polynomials in `cos θ`,
//!   cyclotomic residue rings
//! * [`charpoly`]: exact characteristic polynomials (Berkowitz and the
//!   elementary-subgraph expansion) and symmetric-spectrum decisions
//! * [`numeric`]: dense Hermitian matrices and eigenvalues
//! * [`constructions`]: oriented paths, book graphs and named examples
//! * [`search`]: counterexamples, bounded book-graph scans, minimality tables
//! * [`reproduce`]: the end-to-end check battery behind `bdp verify`

pub mod charpoly;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod numeric;
pub mod reproduce;
pub mod rings;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Cycle, MixedGraph, PairKind, UndirectedGraph};
pub use rings::{Angle, CosPoly, CyclotomicElement, LaurentPoly};
