use crate::error::{Error, Result};
use crate::graph::Graph;

/// Shape flags of one connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSummary {
    /// Sorted vertex list.
    pub vertices: Vec<usize>,
    pub edges: usize,
    pub is_tree: bool,
    pub is_path: bool,
    pub is_cycle: bool,
    pub is_star: bool,
    pub is_triangle: bool,
}

impl ComponentSummary {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Connected components, ordered by their smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<ComponentSummary> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut vertices = Vec::new();
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        vertices.sort_unstable();
        out.push(summarize(g, vertices));
    }
    out
}

fn summarize(g: &Graph, vertices: Vec<usize>) -> ComponentSummary {
    let size = vertices.len();
    let degree_sum: usize = vertices.iter().map(|&v| g.degree(v)).sum();
    let edges = degree_sum / 2;
    let max_deg = vertices.iter().map(|&v| g.degree(v)).max().unwrap_or(0);
    let branching = vertices.iter().filter(|&&v| g.degree(v) >= 2).count();
    let is_tree = edges + 1 == size;
    let is_cycle = size >= 3 && vertices.iter().all(|&v| g.degree(v) == 2);
    ComponentSummary {
        edges,
        is_tree,
        is_path: is_tree && max_deg <= 2,
        is_cycle,
        is_star: branching <= 1,
        is_triangle: is_cycle && size == 3,
        vertices,
    }
}

/// Number of triangles (3-cliques).
pub fn count_triangles(g: &Graph) -> usize {
    let mut count = 0;
    for (u, v) in g.edges() {
        count += common_neighbors(g, u, v).filter(|&w| w > v).count();
    }
    count
}

/// Whether some edge lies in two or more triangles.
pub fn contains_diamond(g: &Graph) -> bool {
    g.edges().any(|(u, v)| common_neighbors(g, u, v).nth(1).is_some())
}

fn common_neighbors<'a>(g: &'a Graph, u: usize, v: usize) -> impl Iterator<Item = usize> + 'a {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    return Some(a[i - 1]);
                }
            }
        }
        None
    })
}

/// Diamond-free and `n - m + (#triangles) == (#components)`.
///
/// For a non-empty graph this holds exactly when the graph has no `C4`
/// topological minor. The empty graph satisfies it.
pub fn c4_condition(g: &Graph) -> bool {
    if contains_diamond(g) {
        return false;
    }
    let cc = connected_components(g).len();
    g.n() + count_triangles(g) == g.m() + cc
}

/// `m <= 1.5 (n - 1)`, the edge bound implied by the `C4`-condition on a
/// connected graph.
pub fn edge_bound_holds(g: &Graph) -> Result<bool> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(2 * g.m() <= 3 * (g.n() - 1))
}
