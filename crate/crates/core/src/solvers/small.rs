//! Graphs on at most 16 bag positions given as adjacency bitmasks,
//! restricted to a vertex mask.

use super::labels::pair;

pub(crate) fn edge_count(adj: &[u32], verts: u32) -> u32 {
    ones(verts).map(|i| (adj[i] & verts).count_ones()).sum::<u32>() / 2
}

pub(crate) fn component_count(adj: &[u32], verts: u32) -> u32 {
    let mut left = verts;
    let mut count = 0;
    while left != 0 {
        count += 1;
        let mut frontier = left & left.wrapping_neg();
        left &= !frontier;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[i] & left;
            left &= !fresh;
            frontier |= fresh;
        }
    }
    count
}

/// Number of triangles, and the set of pairs that are edges of one.
pub(crate) fn triangles(adj: &[u32], verts: u32) -> (u32, u128) {
    let mut count = 0;
    let mut edges = 0u128;
    for a in ones(verts) {
        for b in ones(adj[a] & verts & !((2u32 << a) - 1)) {
            for c in ones(adj[a] & adj[b] & verts & !((2u32 << b) - 1)) {
                count += 1;
                edges |= 1 << pair(a, b) | 1 << pair(a, c) | 1 << pair(b, c);
            }
        }
    }
    (count, edges)
}

pub(crate) fn has_diamond(adj: &[u32], verts: u32) -> bool {
    ones(verts).any(|a| ones(adj[a] & verts & !((2u32 << a) - 1)).any(|b| (adj[a] & adj[b] & verts).count_ones() >= 2))
}

/// No topological `C4`: diamond-free and `n - m + triangles == components`.
pub(crate) fn c4_free(adj: &[u32], verts: u32) -> bool {
    if has_diamond(adj, verts) {
        return false;
    }
    let (t, _) = triangles(adj, verts);
    verts.count_ones() + t == edge_count(adj, verts) + component_count(adj, verts)
}

pub(crate) fn acyclic(adj: &[u32], verts: u32) -> bool {
    edge_count(adj, verts) + component_count(adj, verts) == verts.count_ones()
}

pub(crate) fn ones(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
        let mut a = vec![0u32; n];
        for &(u, v) in edges {
            a[u] |= 1 << v;
            a[v] |= 1 << u;
        }
        a
    }

    #[test]
    fn counts() {
        let k4 = adj(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(edge_count(&k4, 0b1111), 6);
        assert_eq!(triangles(&k4, 0b1111).0, 4);
        assert_eq!(triangles(&k4, 0b0111).0, 1);
        assert!(has_diamond(&k4, 0b1111));
        assert!(!has_diamond(&k4, 0b0111));
        assert_eq!(component_count(&k4, 0b1001), 1);
        assert_eq!(component_count(&adj(4, &[]), 0b1011), 3);
    }

    #[test]
    fn c4_and_forest_checks() {
        let c4 = adj(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert!(!c4_free(&c4, 0b1111));
        assert!(c4_free(&c4, 0b0111));
        assert!(!acyclic(&c4, 0b1111));
        assert!(acyclic(&c4, 0b1110));
        let paw = adj(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]);
        assert!(c4_free(&paw, 0b1111));
        assert_eq!(triangles(&paw, 0b1111).1.count_ones(), 3);
    }
}
