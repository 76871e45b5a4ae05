use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treedecomp::TreeDecomposition;

/// Largest graph accepted by [`exact_td_small`] by default.
pub const EXACT_LIMIT: usize = 16;

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let ns: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

fn eliminate(adj: &mut [BTreeSet<usize>], v: usize) -> Vec<usize> {
    let ns: Vec<usize> = std::mem::take(&mut adj[v]).into_iter().collect();
    for &a in &ns {
        adj[a].remove(&v);
        for &b in &ns {
            if a != b {
                adj[a].insert(b);
            }
        }
    }
    ns
}

fn initial_adjacency(g: &Graph) -> Vec<BTreeSet<usize>> {
    (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect()
}

/// Greedy elimination ordering: fewest fill edges first, then smallest
/// degree, then lowest vertex id.
pub fn min_fill_ordering(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj = initial_adjacency(g);
    let mut alive = vec![true; n];
    let mut fill: Vec<usize> = (0..n).map(|v| fill_in(&adj, v)).collect();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill[v], adj[v].len(), v))
            .expect("a live vertex remains");
        alive[v] = false;
        order.push(v);
        let ns = eliminate(&mut adj, v);
        // fill counts change only within distance two of v
        let mut touched: BTreeSet<usize> = ns.iter().copied().collect();
        for &a in &ns {
            touched.extend(adj[a].iter().copied());
        }
        for u in touched {
            fill[u] = fill_in(&adj, u);
        }
    }
    order
}

/// The decomposition induced by eliminating vertices in `order`: the bag of
/// `v` is `v` plus its later neighbours in the filled graph, attached to the
/// bag of the earliest of those neighbours. Components are chained together.
pub fn td_from_ordering(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new());
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj = initial_adjacency(g);
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later = eliminate(&mut adj, v);
        let mut bag = later.clone();
        bag.push(v);
        bags.push(bag);
        match later.iter().map(|&u| pos[u]).min() {
            Some(parent) => edges.push((i, parent)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}

/// Min-fill heuristic decomposition.
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    td_from_ordering(g, &min_fill_ordering(g))
}

/// Optimal-width decomposition by dynamic programming over vertex subsets,
/// for graphs with at most `limit` vertices (itself capped at 20).
pub fn exact_td_small(g: &Graph, limit: usize) -> Result<TreeDecomposition> {
    let limit = limit.min(20);
    let n = g.n();
    if n > limit {
        return Err(Error::Guard {
            what: "vertex count for exact treewidth",
            actual: n,
            limit,
        });
    }
    if n == 0 {
        return Ok(td_from_ordering(g, &[]));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    // vertices outside s + {v} reachable from v through s
    let q = |s: u32, v: usize| -> u32 {
        let mut inside = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let ns = nbr[x] & !inside;
            out |= ns & !s;
            let grow = ns & s;
            inside |= grow;
            frontier |= grow;
        }
        out & !(1 << v)
    };
    let full = (1u32 << n) - 1;
    let mut best = vec![u8::MAX; 1 << n];
    let mut last = vec![0u8; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let before = s & !(1 << v);
            let cost = best[before as usize].max(q(before, v).count_ones() as u8);
            if cost < best[s as usize] {
                best[s as usize] = cost;
                last[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok(td_from_ordering(g, &order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::treedecomp::validate_td;

    #[test]
    fn heuristic_is_valid_and_tight_on_easy_graphs() {
        for (g, w) in [
            (path(6), 1),
            (cycle(6), 2),
            (complete(5), 4),
            (star(4), 1),
            (grid(3, 6), 3),
            (Graph::new(3), 0),
        ] {
            let td = heuristic_td(&g);
            assert_eq!(validate_td(&g, &td), Ok(()));
            assert_eq!(td.width(), w, "{g:?}");
        }
    }

    #[test]
    fn empty_graph_has_one_empty_bag() {
        let td = heuristic_td(&Graph::new(0));
        assert_eq!(td.bags, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn exact_matches_known_treewidths() {
        for (g, w) in [
            (path(5), 1),
            (cycle(7), 2),
            (complete(6), 5),
            (grid(3, 3), 3),
            (grid(4, 4), 4),
            (disjoint_union(&[complete(4), cycle(5)]), 3),
        ] {
            let td = exact_td_small(&g, EXACT_LIMIT).unwrap();
            assert_eq!(validate_td(&g, &td), Ok(()));
            assert_eq!(td.width(), w);
        }
    }

    #[test]
    fn exact_refuses_large_graphs() {
        assert!(matches!(
            exact_td_small(&path(17), EXACT_LIMIT),
            Err(Error::Guard { .. })
        ));
    }
}
