//! Bottom-up evaluation of a dynamic program over a nice tree decomposition.
//!
//! In parallel mode the two subtrees below every join are evaluated with
//! `rayon::join`; chains of introduce and forget nodes run in place.

use crate::graph::Graph;
use crate::par::{self, Exec};
use crate::treedecomp::{NiceTreeDecomposition, NodeKind};

use super::NodeStat;

/// Vertices of a bag (sorted) with adjacency between bag positions in the
/// input graph. Vertices outside the graph, such as an added universal
/// vertex, have no adjacency here.
pub(crate) struct Bag {
    pub vertices: Vec<usize>,
    pub adj: Vec<u32>,
}

impl Bag {
    pub fn new(g: &Graph, vertices: &[usize]) -> Self {
        let adj = vertices
            .iter()
            .map(|&u| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| u < g.n() && g.has_edge(u, w))
                    .fold(0u32, |m, (j, _)| m | 1 << j)
            })
            .collect();
        Bag {
            vertices: vertices.to_vec(),
            adj,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn pos(&self, v: usize) -> usize {
        self.vertices.binary_search(&v).expect("vertex is in the bag")
    }

    /// Vertex ids at the positions set in `mask`.
    pub fn ids(&self, mask: u32) -> Vec<usize> {
        super::small::ones(mask).map(|i| self.vertices[i]).collect()
    }
}

pub(crate) trait Program: Sync {
    type Table: Send;

    fn leaf(&self) -> Self::Table;
    /// `bag` is the bag after introducing `v`.
    fn introduce(&self, bag: &Bag, v: usize, child: Self::Table, exec: Exec) -> Self::Table;
    /// `bag` is the bag before forgetting `v`.
    fn forget(&self, bag: &Bag, v: usize, child: Self::Table, exec: Exec) -> Self::Table;
    fn join(&self, bag: &Bag, left: Self::Table, right: Self::Table, exec: Exec) -> Self::Table;
    fn measure(&self, bag: &Bag, table: &Self::Table) -> NodeStat;
}

fn step<P: Program>(
    prog: &P,
    g: &Graph,
    nice: &NiceTreeDecomposition,
    node: usize,
    inputs: Vec<P::Table>,
    exec: Exec,
) -> (P::Table, NodeStat) {
    let x = &nice.nodes()[node];
    let mut inputs = inputs.into_iter();
    let table = match x.kind {
        NodeKind::Leaf => prog.leaf(),
        NodeKind::Introduce(v) => prog.introduce(&Bag::new(g, &x.bag), v, inputs.next().expect("one child"), exec),
        NodeKind::Forget(v) => {
            let child = &nice.nodes()[x.children[0]];
            prog.forget(&Bag::new(g, &child.bag), v, inputs.next().expect("one child"), exec)
        }
        NodeKind::Join => {
            let left = inputs.next().expect("two children");
            let right = inputs.next().expect("two children");
            prog.join(&Bag::new(g, &x.bag), left, right, exec)
        }
    };
    let stat = prog.measure(&Bag::new(g, &x.bag), &table);
    (table, stat)
}

/// Runs `prog` bottom-up and returns the root table and per-node statistics
/// indexed by node.
pub(crate) fn run<P: Program>(
    prog: &P,
    g: &Graph,
    nice: &NiceTreeDecomposition,
    exec: Exec,
) -> (P::Table, Vec<NodeStat>) {
    if exec.is_parallel() {
        let mut stats = Vec::with_capacity(nice.len());
        let table = eval(prog, g, nice, nice.root(), exec, &mut stats);
        stats.sort_by_key(|&(i, _)| i);
        return (table, stats.into_iter().map(|(_, s)| s).collect());
    }
    let mut tables: Vec<Option<P::Table>> = (0..nice.len()).map(|_| None).collect();
    let mut stats = Vec::with_capacity(nice.len());
    for i in 0..nice.len() {
        let inputs = nice.nodes()[i]
            .children
            .iter()
            .map(|&c| tables[c].take().expect("child evaluated"))
            .collect();
        let (table, stat) = step(prog, g, nice, i, inputs, exec);
        tables[i] = Some(table);
        stats.push(stat);
    }
    (tables[nice.root()].take().expect("root evaluated"), stats)
}

fn eval<P: Program>(
    prog: &P,
    g: &Graph,
    nice: &NiceTreeDecomposition,
    top: usize,
    exec: Exec,
    stats: &mut Vec<(usize, NodeStat)>,
) -> P::Table {
    // walk down the chain of single-child nodes to a leaf or join
    let mut chain = Vec::new();
    let mut bottom = top;
    while nice.nodes()[bottom].children.len() == 1 {
        chain.push(bottom);
        bottom = nice.nodes()[bottom].children[0];
    }
    let inputs = match nice.nodes()[bottom].children.as_slice() {
        [] => Vec::new(),
        &[l, r] => {
            let ((lt, ls), (rt, rs)) = par::join(
                exec,
                || {
                    let mut s = Vec::new();
                    (eval(prog, g, nice, l, exec, &mut s), s)
                },
                || {
                    let mut s = Vec::new();
                    (eval(prog, g, nice, r, exec, &mut s), s)
                },
            );
            stats.extend(ls);
            stats.extend(rs);
            vec![lt, rt]
        }
        _ => unreachable!("nice nodes have at most two children"),
    };
    let (mut table, stat) = step(prog, g, nice, bottom, inputs, exec);
    stats.push((bottom, stat));
    for &node in chain.iter().rev() {
        let (t, s) = step(prog, g, nice, node, vec![table], exec);
        table = t;
        stats.push((node, s));
    }
    table
}
