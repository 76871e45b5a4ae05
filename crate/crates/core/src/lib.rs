//! Vertex deletion to topological-minor-free graphs, solved by dynamic
//! programming over nice tree decompositions.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] holds the graph type, `.gr` I/O, pattern identifiers and the
//!   structural freeness checks.
//! * [`treedecomp`] builds, validates and niceifies tree decompositions.
//! * [`partitions`] is the weighted-partition algebra used by the
//!   connectivity-aware programs, including the rank-based `reduce`.
//! * [`solvers`] runs one dynamic program per supported pattern.
//! * [`oracle`] is the exhaustive reference used to cross-check everything else.

pub mod error;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod partitions;
pub mod solvers;
pub mod treedecomp;

pub use error::{Error, Result};
pub use graph::{Graph, PatternId};
pub use par::Exec;
