//! Simple undirected graphs, forbidden-pattern identifiers and the
//! structural characterizations of pattern freeness.

mod freeness;
pub mod generators;
mod io;
mod structure;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use freeness::{explain_violation, is_free};
pub use io::{parse_gr, write_gr};
pub use structure::{
    c4_condition, connected_components, contains_diamond, count_triangles, edge_bound_holds, ComponentSummary,
};

/// Simple undirected graph on vertices `0..n`, adjacency lists kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "edge {{{u}, {v}}} out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidGraph(format!("duplicate edge {{{u}, {v}}}"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `keep`, relabelled to `0..k` in the order given.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut ns: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&u| (index[u] != usize::MAX).then_some(index[u]))
                    .collect();
                ns.sort_unstable();
                ns
            })
            .collect::<Vec<_>>();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    /// `G - S`: deletes the vertices flagged in `deleted` and relabels the rest.
    pub fn without(&self, deleted: &[bool]) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !deleted[v]).collect();
        self.induced(&keep)
    }

    /// Applies a vertex relabelling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (v, ns) in self.adj.iter().enumerate() {
            adj[perm[v]] = ns.iter().map(|&u| perm[u]).collect();
            adj[perm[v]].sort_unstable();
        }
        Graph { adj, m: self.m }
    }
}

/// Forbidden patterns understood by the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternId {
    P3,
    P4,
    /// The star with `s` leaves; `s >= 1`.
    K1s(usize),
    C4,
    Paw,
    Chair,
    Banner,
}

impl PatternId {
    /// The pattern as a graph.
    pub fn graph(self) -> Graph {
        match self {
            PatternId::P3 => generators::path(3),
            PatternId::P4 => generators::path(4),
            PatternId::K1s(s) => generators::star(s),
            PatternId::C4 => generators::cycle(4),
            PatternId::Paw => generators::paw(),
            PatternId::Chair => generators::chair(),
            PatternId::Banner => generators::banner(),
        }
    }

    /// Whether a tree-decomposition dynamic program exists for this pattern.
    pub fn has_dp(self) -> bool {
        !matches!(self, PatternId::Chair | PatternId::Banner)
    }

    /// Every pattern family, with the star family instantiated at 3 and 4 leaves.
    pub fn catalogue() -> Vec<PatternId> {
        vec![
            PatternId::P3,
            PatternId::P4,
            PatternId::K1s(3),
            PatternId::K1s(4),
            PatternId::C4,
            PatternId::Paw,
            PatternId::Chair,
            PatternId::Banner,
        ]
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternId::P3 => write!(f, "p3"),
            PatternId::P4 => write!(f, "p4"),
            PatternId::K1s(s) => write!(f, "k1s:{s}"),
            PatternId::C4 => write!(f, "c4"),
            PatternId::Paw => write!(f, "paw"),
            PatternId::Chair => write!(f, "chair"),
            PatternId::Banner => write!(f, "banner"),
        }
    }
}

impl FromStr for PatternId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let parsed = match lower.as_str() {
            "p3" => PatternId::P3,
            "p4" => PatternId::P4,
            "c4" => PatternId::C4,
            "paw" => PatternId::Paw,
            "chair" => PatternId::Chair,
            "banner" => PatternId::Banner,
            other => {
                let leaves = other
                    .strip_prefix("k1s:")
                    .or_else(|| other.strip_prefix("k1,"))
                    .ok_or_else(|| format!("unknown pattern `{s}`"))?;
                let leaves: usize = leaves.parse().map_err(|_| format!("bad star size in `{s}`"))?;
                if leaves == 0 {
                    return Err("a star needs at least one leaf".into());
                }
                PatternId::K1s(leaves)
            }
        };
        Ok(parsed)
    }
}
