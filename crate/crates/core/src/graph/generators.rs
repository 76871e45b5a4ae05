//! Small named graphs and random families used by tests, benches and the CLI.

use rand::Rng;

use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).expect("generator edges are valid")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    build(n, &edges)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    build(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    build(n, &edges)
}

/// `K_{1,s}` with centre 0.
pub fn star(s: usize) -> Graph {
    let edges: Vec<_> = (1..=s).map(|v| (0, v)).collect();
    build(s + 1, &edges)
}

/// Triangle `0 1 2` with pendant vertex 3 on 0.
pub fn paw() -> Graph {
    build(4, &[(0, 1), (1, 2), (0, 2), (0, 3)])
}

/// `K_{1,3}` with one edge subdivided: centre 0, leaves 1 2, path 0-3-4.
pub fn chair() -> Graph {
    build(5, &[(0, 1), (0, 2), (0, 3), (3, 4)])
}

/// Four-cycle `0 1 2 3` with pendant vertex 4 on 0.
pub fn banner() -> Graph {
    build(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)])
}

/// `K4` minus the edge `{2, 3}`.
pub fn diamond() -> Graph {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
}

/// `width x height` grid, vertex `(r, c)` numbered `r * width + c`.
pub fn grid(width: usize, height: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..height {
        for c in 0..width {
            let v = r * width + c;
            if c + 1 < width {
                edges.push((v, v + 1));
            }
            if r + 1 < height {
                edges.push((v, v + width));
            }
        }
    }
    build(width * height, &edges)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let n = parts.iter().map(Graph::n).sum();
    let mut g = Graph::new(n);
    let mut offset = 0;
    for part in parts {
        for (u, v) in part.edges() {
            g.add_edge(u + offset, v + offset).expect("disjoint parts");
        }
        offset += part.n();
    }
    g
}

/// The labelled graph on `n` vertices whose edge set is given by the bits of
/// `mask`, pairs `(u, v)` with `u < v` taken in lexicographic order.
pub fn from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v).expect("fresh pair");
            }
            bit += 1;
        }
    }
    g
}

/// Every labelled graph on `n <= 8` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 8, "2^(n choose 2) graphs is too many above 8 vertices");
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs).map(move |mask| from_mask(n, mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn sizes() {
        assert_eq!((grid(3, 4).n(), grid(3, 4).m()), (12, 17));
        assert_eq!(complete(5).m(), 10);
        assert_eq!(star(4).degree(0), 4);
        assert_eq!(all_graphs(4).count(), 64);
        assert_eq!(all_graphs(0).count(), 1);
    }

    #[test]
    fn gnp_is_seeded() {
        let mut a = rand::rngs::StdRng::seed_from_u64(7);
        let mut b = rand::rngs::StdRng::seed_from_u64(7);
        assert_eq!(gnp(20, 0.3, &mut a), gnp(20, 0.3, &mut b));
    }
}
