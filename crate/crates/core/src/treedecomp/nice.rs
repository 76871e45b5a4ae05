use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treedecomp::{validate_td, TreeDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted.
    pub bag: Vec<usize>,
    /// Indices of the children, all smaller than this node's index.
    pub children: Vec<usize>,
}

/// A rooted nice tree decomposition stored in post-order: children precede
/// parents and the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn max_bag_size(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// The same bags as a plain decomposition, tree edges child to parent.
    pub fn to_plain(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, x)| x.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// For every node, the sorted set of vertices appearing in its subtree.
    pub fn subtree_vertices(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<BTreeSet<usize>> = Vec::with_capacity(self.nodes.len());
        for x in &self.nodes {
            let mut set: BTreeSet<usize> = x.bag.iter().copied().collect();
            for &c in &x.children {
                set.extend(out[c].iter().copied());
            }
            out.push(set);
        }
        out.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Checks the node-kind rules, post-order numbering, empty root and
    /// leaves, that every vertex is forgotten exactly once, and that the bags
    /// form a valid decomposition of `g`.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.nodes.is_empty() {
            return Err("no nodes".into());
        }
        if !self.nodes[self.root()].bag.is_empty() {
            return Err("root bag is not empty".into());
        }
        let mut parents = vec![0usize; self.nodes.len()];
        let mut forgotten = vec![0usize; g.n()];
        for (i, x) in self.nodes.iter().enumerate() {
            if x.bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("node {i}: bag not sorted"));
            }
            for &c in &x.children {
                if c >= i {
                    return Err(format!("node {i}: child {c} is not numbered before it"));
                }
                parents[c] += 1;
            }
            let kids: Vec<&Vec<usize>> = x.children.iter().map(|&c| &self.nodes[c].bag).collect();
            let ok = match x.kind {
                NodeKind::Leaf => kids.is_empty() && x.bag.is_empty(),
                NodeKind::Introduce(v) => kids.len() == 1 && !kids[0].contains(&v) && with(kids[0], v) == x.bag,
                NodeKind::Forget(v) => {
                    if v < g.n() {
                        forgotten[v] += 1;
                    }
                    kids.len() == 1 && kids[0].contains(&v) && without(kids[0], v) == x.bag
                }
                NodeKind::Join => kids.len() == 2 && *kids[0] == x.bag && *kids[1] == x.bag,
            };
            if !ok {
                return Err(format!("node {i}: {:?} rule violated", x.kind));
            }
        }
        if parents[..self.root()].iter().any(|&p| p != 1) || parents[self.root()] != 0 {
            return Err("nodes do not form a single rooted tree".into());
        }
        if let Some(v) = forgotten.iter().position(|&f| f != 1) {
            return Err(format!("vertex {v} forgotten {} times", forgotten[v]));
        }
        validate_td(g, &self.to_plain()).map_err(|vs| vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    }
}

fn with(bag: &[usize], v: usize) -> Vec<usize> {
    let mut b = bag.to_vec();
    let pos = b.binary_search(&v).unwrap_or_else(|p| p);
    b.insert(pos, v);
    b
}

fn without(bag: &[usize], v: usize) -> Vec<usize> {
    bag.iter().copied().filter(|&u| u != v).collect()
}

struct Arena {
    nodes: Vec<NiceNode>,
}

impl Arena {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Forgets `from \ to`, then introduces `to \ from`, starting above `top`.
    fn morph(&mut self, mut top: usize, to: &[usize]) -> usize {
        let from = self.nodes[top].bag.clone();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            let bag = without(&self.nodes[top].bag, v);
            top = self.push(NodeKind::Forget(v), bag, vec![top]);
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            let bag = with(&self.nodes[top].bag, v);
            top = self.push(NodeKind::Introduce(v), bag, vec![top]);
        }
        top
    }
}

/// Contracts tree edges whose one end's bag is contained in the other's.
/// Returns the surviving bags and the rooted child lists (root is index 0).
fn simplify(td: &TreeDecomposition) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let nb = td.bags.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nb];
    for &(a, b) in &td.edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let mut alive = vec![true; nb];
    let mut work: Vec<(usize, usize)> = td.edges.clone();
    while let Some((a, b)) = work.pop() {
        if !alive[a] || !alive[b] || !adj[a].contains(&b) {
            continue;
        }
        let (gone, keep) = if subset(&td.bags[a], &td.bags[b]) {
            (a, b)
        } else if subset(&td.bags[b], &td.bags[a]) {
            (b, a)
        } else {
            continue;
        };
        alive[gone] = false;
        let ns = std::mem::take(&mut adj[gone]);
        adj[keep].remove(&gone);
        for c in ns {
            if c != keep {
                adj[c].remove(&gone);
                adj[c].insert(keep);
                adj[keep].insert(c);
                work.push((keep, c));
            }
        }
    }
    let mut index = vec![usize::MAX; nb];
    for (next, i) in (0..nb).filter(|&i| alive[i]).enumerate() {
        index[i] = next;
    }
    let bags: Vec<Vec<usize>> = (0..nb).filter(|&i| alive[i]).map(|i| td.bags[i].clone()).collect();
    let mut children = vec![Vec::new(); bags.len()];
    let root = (0..nb).find(|&i| alive[i]).expect("at least one bag");
    let mut seen = vec![false; nb];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                children[index[x]].push(index[y]);
                stack.push(y);
            }
        }
    }
    for c in &mut children {
        c.sort_unstable();
    }
    (bags, children)
}

fn build_nice(td: &TreeDecomposition) -> NiceTreeDecomposition {
    let (bags, children) = simplify(td);
    let mut arena = Arena { nodes: Vec::new() };
    // iterative post-order over the simplified tree
    let mut top = vec![usize::MAX; bags.len()];
    let mut stack = vec![(0usize, false)];
    while let Some((t, expanded)) = stack.pop() {
        if !expanded {
            stack.push((t, true));
            for &c in children[t].iter().rev() {
                stack.push((c, false));
            }
            continue;
        }
        let node = if children[t].is_empty() {
            let leaf = arena.push(NodeKind::Leaf, Vec::new(), Vec::new());
            arena.morph(leaf, &bags[t])
        } else {
            let tops: Vec<usize> = children[t].iter().map(|&c| arena.morph(top[c], &bags[t])).collect();
            tops[1..].iter().fold(tops[0], |acc, &next| {
                arena.push(NodeKind::Join, bags[t].clone(), vec![acc, next])
            })
        };
        top[t] = node;
    }
    let root = arena.morph(top[0], &[]);
    renumber(arena.nodes, root)
}

fn renumber(nodes: Vec<NiceNode>, root: usize) -> NiceTreeDecomposition {
    let mut order = Vec::with_capacity(nodes.len());
    let mut stack = vec![(root, false)];
    while let Some((x, expanded)) = stack.pop() {
        if expanded {
            order.push(x);
            continue;
        }
        stack.push((x, true));
        for &c in nodes[x].children.iter().rev() {
            stack.push((c, false));
        }
    }
    let mut new_index = vec![usize::MAX; nodes.len()];
    for (i, &x) in order.iter().enumerate() {
        new_index[x] = i;
    }
    let out = order
        .iter()
        .map(|&x| NiceNode {
            kind: nodes[x].kind,
            bag: nodes[x].bag.clone(),
            children: nodes[x].children.iter().map(|&c| new_index[c]).collect(),
        })
        .collect();
    NiceTreeDecomposition { nodes: out }
}

fn invalid(vs: Vec<crate::treedecomp::Violation>) -> Error {
    Error::InvalidDecomposition(vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
}

/// Converts a valid decomposition of `g` into nice form of the same width.
/// Root and leaves have empty bags; numbering is post-order.
pub fn make_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceTreeDecomposition> {
    validate_td(g, td).map_err(invalid)?;
    Ok(build_nice(td))
}

/// `g` plus a new vertex (numbered `g.n()`) adjacent to every vertex.
pub fn augment_universal(g: &Graph) -> Graph {
    let v0 = g.n();
    let mut g0 = Graph::new(v0 + 1);
    for (u, v) in g.edges() {
        g0.add_edge(u, v).expect("copied edge");
    }
    for u in 0..v0 {
        g0.add_edge(u, v0).expect("fresh edge");
    }
    g0
}

/// Nice decomposition of `g0` in which `v0` lies in every non-empty bag. It
/// is introduced directly above every leaf and forgotten at the root, so the
/// width is at most one more than that of `td0`.
pub fn make_nice_v0(td0: &TreeDecomposition, g0: &Graph, v0: usize) -> Result<NiceTreeDecomposition> {
    if v0 >= g0.n() {
        return Err(Error::InvalidGraph(format!("vertex {v0} is not in the graph")));
    }
    validate_td(g0, td0).map_err(invalid)?;
    let stripped = TreeDecomposition {
        bags: td0.bags.iter().map(|b| without(b, v0)).collect(),
        edges: td0.edges.clone(),
    };
    let base = build_nice(&stripped);
    let mut nodes: Vec<NiceNode> = Vec::with_capacity(base.len() * 2 + 1);
    let mut index = vec![0usize; base.len()];
    for (i, x) in base.nodes.iter().enumerate() {
        if x.kind == NodeKind::Leaf {
            nodes.push(x.clone());
            nodes.push(NiceNode {
                kind: NodeKind::Introduce(v0),
                bag: vec![v0],
                children: vec![nodes.len() - 1],
            });
        } else {
            nodes.push(NiceNode {
                kind: x.kind,
                bag: with(&x.bag, v0),
                children: x.children.iter().map(|&c| index[c]).collect(),
            });
        }
        index[i] = nodes.len() - 1;
    }
    nodes.push(NiceNode {
        kind: NodeKind::Forget(v0),
        bag: Vec::new(),
        children: vec![nodes.len() - 1],
    });
    Ok(NiceTreeDecomposition { nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::treedecomp::heuristic_td;

    #[test]
    fn nice_form_of_small_graphs() {
        for g in [
            path(5),
            cycle(6),
            complete(4),
            grid(3, 4),
            disjoint_union(&[path(3), cycle(3)]),
        ] {
            let td = heuristic_td(&g);
            let nice = make_nice(&td, &g).unwrap();
            assert_eq!(nice.check(&g), Ok(()));
            assert_eq!(nice.width(), td.width());
        }
    }

    #[test]
    fn join_nodes_appear_for_branching_trees() {
        let g = star(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![0, 2], vec![0, 3]], vec![(0, 1), (0, 2)]);
        let nice = make_nice(&td, &g).unwrap();
        assert_eq!(nice.check(&g), Ok(()));
        assert_eq!(nice.nodes().iter().filter(|x| x.kind == NodeKind::Join).count(), 1);
    }

    #[test]
    fn redundant_bags_are_contracted() {
        let g = path(3);
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![1], vec![1], vec![1, 2], vec![]],
            vec![(0, 1), (1, 2), (2, 3), (3, 4)],
        );
        let nice = make_nice(&td, &g).unwrap();
        assert_eq!(nice.check(&g), Ok(()));
        // leaf, intro 1, intro 2, forget 2, intro 0, forget 0, forget 1
        assert_eq!(nice.len(), 7);
    }

    #[test]
    fn make_nice_rejects_invalid_input() {
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        assert!(matches!(make_nice(&td, &path(3)), Err(Error::InvalidDecomposition(_))));
    }

    #[test]
    fn single_empty_bag_gives_a_single_leaf() {
        let g = Graph::new(0);
        let nice = make_nice(&heuristic_td(&g), &g).unwrap();
        assert_eq!(nice.len(), 1);
        assert_eq!(nice.check(&g), Ok(()));
    }

    fn v0_pipeline(g: &Graph) -> (Graph, usize, TreeDecomposition, NiceTreeDecomposition) {
        let g0 = augment_universal(g);
        let v0 = g.n();
        let mut td0 = heuristic_td(g);
        for b in &mut td0.bags {
            b.push(v0);
        }
        let nice = make_nice_v0(&td0, &g0, v0).unwrap();
        (g0, v0, td0, nice)
    }

    #[test]
    fn v0_is_everywhere() {
        for g in [path(4), cycle(5), grid(2, 3), disjoint_union(&[complete(3), path(2)])] {
            let (g0, v0, td0, nice) = v0_pipeline(&g);
            assert_eq!(nice.check(&g0), Ok(()));
            assert!(nice.width() <= td0.width() + 1);
            for (i, x) in nice.nodes().iter().enumerate() {
                assert!(x.bag.is_empty() || x.bag.contains(&v0));
                if x.kind == NodeKind::Leaf {
                    let parent = nice.nodes().iter().position(|y| y.children.contains(&i)).unwrap();
                    assert_eq!(nice.nodes()[parent].kind, NodeKind::Introduce(v0));
                }
            }
            assert_eq!(nice.nodes()[nice.root()].kind, NodeKind::Forget(v0));
        }
    }

    #[test]
    fn v0_on_empty_graph() {
        let (g0, v0, _, nice) = v0_pipeline(&Graph::new(0));
        assert_eq!(nice.check(&g0), Ok(()));
        let kinds: Vec<NodeKind> = nice.nodes().iter().map(|x| x.kind).collect();
        assert_eq!(
            kinds,
            vec![NodeKind::Leaf, NodeKind::Introduce(v0), NodeKind::Forget(v0)]
        );
    }

    #[test]
    fn augment_adds_universal_vertex() {
        let g0 = augment_universal(&path(3));
        assert_eq!(g0.n(), 4);
        assert_eq!(g0.degree(3), 3);
        assert_eq!(g0.m(), 5);
    }
}
