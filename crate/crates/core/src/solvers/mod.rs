//! Dynamic programs for minimum vertex deletion to `H`-topological-minor-free
//! graphs, one per supported pattern.
//!
//! | pattern | program | table keys per bag `X` |
//! |---|---|---|
//! | `P3` | [`solve_p3`] | `3^|X|` |
//! | `P4` | [`solve_p4`] | `6^|X|` |
//! | `K1,s` | [`solve_bounded_degree`] with `d = s - 1` | `(d+2)^|X|` |
//! | `C4` | [`solve_c4`] | rank-reduced partition sets |
//! | paw | [`solve_paw`] | rank-reduced partition sets |
//!
//! The `C4` and paw programs run on the graph plus a universal vertex and
//! need a decomposition from [`make_nice_v0`].

mod bdd;
mod c4;
mod engine;
mod labels;
mod p3;
mod p4;
mod paw;
mod small;

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{Graph, PatternId};
use crate::par::Exec;
use crate::treedecomp::{
    augment_universal, heuristic_td, make_nice, make_nice_v0, validate_td, NiceTreeDecomposition, NodeKind,
    TreeDecomposition,
};

/// Largest bag the programs accept.
pub const MAX_BAG: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Minimize,
    /// Is there a deletion set of at most this size?
    Decide(usize),
}

#[derive(Clone, Debug)]
pub struct SolveRequest<'a> {
    pub graph: &'a Graph,
    pub pattern: PatternId,
    pub mode: Mode,
    /// A decomposition of `graph`; the min-fill heuristic is used when absent.
    pub decomposition: Option<&'a TreeDecomposition>,
    pub exec: Exec,
}

impl<'a> SolveRequest<'a> {
    pub fn new(graph: &'a Graph, pattern: PatternId) -> Self {
        SolveRequest {
            graph,
            pattern,
            mode: Mode::Minimize,
            decomposition: None,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Minimum(usize),
    Decision(bool),
}

/// Table measurements at one node after it was computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NodeStat {
    pub bag: usize,
    /// Number of keys in the table.
    pub entries: usize,
    /// Largest partition set stored under one key (rank-based programs only).
    pub max_set: usize,
    /// Everything stored: keys for the classical programs, partitions summed
    /// over all keys for the rank-based ones.
    pub total: usize,
    /// Whether the table respects the program's size bound.
    pub within_bound: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveStats {
    /// Width of the nice decomposition the program ran on.
    pub width: usize,
    pub nodes: usize,
    pub peak_entries: usize,
    pub peak_set: usize,
    pub peak_total: usize,
    pub bound_violations: usize,
    pub per_node: Vec<NodeStat>,
}

impl SolveStats {
    fn from_nodes(nice: &NiceTreeDecomposition, per_node: Vec<NodeStat>) -> Self {
        SolveStats {
            width: nice.width(),
            nodes: nice.len(),
            peak_entries: per_node.iter().map(|s| s.entries).max().unwrap_or(0),
            peak_set: per_node.iter().map(|s| s.max_set).max().unwrap_or(0),
            peak_total: per_node.iter().map(|s| s.total).max().unwrap_or(0),
            bound_violations: per_node.iter().filter(|s| !s.within_bound).count(),
            per_node,
        }
    }

    /// Largest `total` seen at each bag size (index = bag size).
    pub fn peak_by_bag(&self) -> Vec<usize> {
        let mut out = vec![0; self.per_node.iter().map(|s| s.bag + 1).max().unwrap_or(0)];
        for s in &self.per_node {
            out[s.bag] = out[s.bag].max(s.total);
        }
        out
    }
}

/// Minimum deletion size with table statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub minimum: usize,
    pub stats: SolveStats,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub answer: Answer,
    pub minimum: usize,
    pub stats: SolveStats,
    pub elapsed: Duration,
}

fn check_bags(nice: &NiceTreeDecomposition) -> Result<()> {
    let size = nice.max_bag_size();
    if size > MAX_BAG {
        return Err(Error::Guard {
            what: "bag size",
            actual: size,
            limit: MAX_BAG,
        });
    }
    Ok(())
}

fn finish(nice: &NiceTreeDecomposition, minimum: usize, per_node: Vec<NodeStat>) -> Outcome {
    let stats = SolveStats::from_nodes(nice, per_node);
    debug_assert_eq!(stats.bound_violations, 0, "table exceeded its size bound");
    Outcome { minimum, stats }
}

/// `P3`-deletion (maximum degree at most one afterwards).
pub fn solve_p3(g: &Graph, nice: &NiceTreeDecomposition, exec: Exec) -> Result<Outcome> {
    check_bags(nice)?;
    let (root, stats) = engine::run(&p3::P3, g, nice, exec);
    Ok(finish(nice, p3::answer(&root), stats))
}

/// `P4`-deletion (every component a triangle or a star afterwards).
pub fn solve_p4(g: &Graph, nice: &NiceTreeDecomposition, exec: Exec) -> Result<Outcome> {
    check_bags(nice)?;
    let (root, stats) = engine::run(&p4::P4, g, nice, exec);
    Ok(finish(nice, p4::answer(&root), stats))
}

/// Deletion to maximum degree at most `d`; `K1,s`-deletion is `d = s - 1`.
pub fn solve_bounded_degree(g: &Graph, nice: &NiceTreeDecomposition, d: usize, exec: Exec) -> Result<Outcome> {
    check_bags(nice)?;
    if d > bdd::MAX_DEGREE {
        return Err(Error::Guard {
            what: "degree bound",
            actual: d,
            limit: bdd::MAX_DEGREE,
        });
    }
    let prog = bdd::BoundedDegree { d: d as u8 };
    let (root, stats) = engine::run(&prog, g, nice, exec);
    Ok(finish(nice, bdd::answer(&root), stats))
}

fn check_v0(g: &Graph, nice: &NiceTreeDecomposition) -> Result<usize> {
    let v0 = g.n();
    let ok = nice.nodes().iter().all(|x| match x.kind {
        NodeKind::Leaf => true,
        _ => x.bag.is_empty() || x.bag.last() == Some(&v0),
    });
    let introduced_first = nice
        .nodes()
        .iter()
        .all(|x| x.kind != NodeKind::Introduce(v0) || nice.nodes()[x.children[0]].kind == NodeKind::Leaf);
    if !ok || !introduced_first {
        return Err(Error::InvalidDecomposition(format!(
            "expected vertex {v0} in every non-empty bag, introduced directly above the leaves"
        )));
    }
    Ok(v0)
}

/// `C4`-deletion. `nice` must decompose `g` plus universal vertex `g.n()`
/// in the form produced by [`make_nice_v0`].
pub fn solve_c4(g: &Graph, nice: &NiceTreeDecomposition, exec: Exec) -> Result<Outcome> {
    check_bags(nice)?;
    let v0 = check_v0(g, nice)?;
    let (root, stats) = engine::run(&c4::C4 { v0 }, g, nice, exec);
    Ok(finish(nice, c4::answer(&root), stats))
}

/// Paw-deletion (every component a cycle or a tree afterwards). `nice` is
/// as for [`solve_c4`].
pub fn solve_paw(g: &Graph, nice: &NiceTreeDecomposition, exec: Exec) -> Result<Outcome> {
    check_bags(nice)?;
    let v0 = check_v0(g, nice)?;
    let (root, stats) = engine::run(&paw::Paw { v0 }, g, nice, exec);
    Ok(finish(nice, paw::answer(&root), stats))
}

/// The decomposition a pattern's program runs on: plain nice form, or the
/// universal-vertex form for `C4` and paw.
pub fn prepare(g: &Graph, pattern: PatternId, td: Option<&TreeDecomposition>) -> Result<NiceTreeDecomposition> {
    let owned;
    let td = match td {
        Some(td) => {
            validate_td(g, td).map_err(|vs| {
                Error::InvalidDecomposition(vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
            })?;
            td
        }
        None => {
            owned = heuristic_td(g);
            &owned
        }
    };
    match pattern {
        PatternId::C4 | PatternId::Paw => {
            let g0 = augment_universal(g);
            let v0 = g.n();
            let mut td0 = td.clone();
            for bag in &mut td0.bags {
                bag.push(v0);
            }
            make_nice_v0(&td0, &g0, v0)
        }
        _ => make_nice(td, g),
    }
}

/// Runs the program for `req.pattern` on `req.graph`.
pub fn solve(req: &SolveRequest) -> Result<SolveResult> {
    let start = Instant::now();
    let g = req.graph;
    if !req.pattern.has_dp() {
        return Err(Error::NoDynamicProgram(req.pattern));
    }
    let nice = prepare(g, req.pattern, req.decomposition)?;
    let outcome = match req.pattern {
        PatternId::P3 => solve_p3(g, &nice, req.exec)?,
        PatternId::P4 => solve_p4(g, &nice, req.exec)?,
        PatternId::K1s(s) if s >= 1 => solve_bounded_degree(g, &nice, s - 1, req.exec)?,
        PatternId::K1s(_) => Outcome {
            minimum: g.n(),
            stats: SolveStats::default(),
        },
        PatternId::C4 => solve_c4(g, &nice, req.exec)?,
        PatternId::Paw => solve_paw(g, &nice, req.exec)?,
        PatternId::Chair | PatternId::Banner => unreachable!("checked above"),
    };
    let answer = match req.mode {
        Mode::Minimize => Answer::Minimum(outcome.minimum),
        Mode::Decide(k) => Answer::Decision(outcome.minimum <= k),
    };
    Ok(SolveResult {
        answer,
        minimum: outcome.minimum,
        stats: outcome.stats,
        elapsed: start.elapsed(),
    })
}

/// Upper bound on table keys at a bag of `bag` vertices for the classical
/// programs, or on one partition set over a ground of `bag` elements for the
/// rank-based ones.
pub fn table_bound(pattern: PatternId, bag: usize) -> f64 {
    let base: f64 = match pattern {
        PatternId::P3 => 3.0,
        PatternId::P4 => 6.0,
        PatternId::K1s(s) => (s + 1) as f64,
        _ => 2.0,
    };
    base.powi(bag as i32)
}
