use crate::error::Result;
use crate::graph::Graph;
use crate::oracle::{guard, MAX_HOST, MAX_PATTERN};

/// Branch sets of a minor model: `branch_sets[x]` is the connected host
/// vertex set standing in for pattern vertex `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<usize>>,
}

impl MinorModel {
    /// Non-empty, pairwise disjoint, connected branch sets with a host edge
    /// between the sets of every pattern edge.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.branch_sets.len() != pattern.n() {
            return false;
        }
        let mut owner = vec![usize::MAX; host.n()];
        for (x, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return false;
            }
            for &v in set {
                if v >= host.n() || owner[v] != usize::MAX {
                    return false;
                }
                owner[v] = x;
            }
            let mask = set.iter().fold(0u64, |m, &v| m | 1 << v);
            if !connected(host, mask) {
                return false;
            }
        }
        pattern.edges().all(|(x, y)| {
            self.branch_sets[x]
                .iter()
                .any(|&a| host.neighbors(a).iter().any(|&b| owner[b] == y))
        })
    }
}

fn connected(host: &Graph, mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in host.neighbors(v) {
            if mask >> u & 1 == 1 && seen >> u & 1 == 0 {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    seen == mask
}

/// Pattern vertices in breadth-first order per component, so every vertex
/// except a component's first has an earlier neighbour.
pub(crate) fn search_order(pattern: &Graph) -> Vec<usize> {
    let p = pattern.n();
    let mut order = Vec::with_capacity(p);
    let mut seen = vec![false; p];
    let mut starts: Vec<usize> = (0..p).collect();
    starts.sort_by_key(|&x| std::cmp::Reverse(pattern.degree(x)));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in pattern.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    n: usize,
    pattern: &'a Graph,
    order: Vec<usize>,
    /// Connected host subsets with their outer boundaries.
    subsets: Vec<(u32, u32)>,
    phi: Vec<u32>,
}

impl Search<'_> {
    fn assign(&mut self, i: usize, used: u32) -> bool {
        if i == self.order.len() {
            return true;
        }
        let x = self.order[i];
        let remaining = self.order.len() - i - 1;
        let earlier: Vec<u32> = self
            .pattern
            .neighbors(x)
            .iter()
            .filter(|&&y| self.phi[y] != 0)
            .map(|&y| self.phi[y])
            .collect();
        for k in 0..self.subsets.len() {
            let (set, boundary) = self.subsets[k];
            if set & used != 0 || (used | set).count_ones() as usize + remaining > self.n {
                continue;
            }
            if earlier.iter().any(|&b| boundary & b == 0) {
                continue;
            }
            self.phi[x] = set;
            if self.assign(i + 1, used | set) {
                return true;
            }
            self.phi[x] = 0;
        }
        false
    }
}

/// Searches for a minor model of `pattern` in `host` over all choices of
/// connected, disjoint branch sets.
pub fn contains_minor(host: &Graph, pattern: &Graph) -> Result<Option<MinorModel>> {
    guard("pattern size for minor search", pattern.n(), MAX_PATTERN)?;
    guard("host size for minor search", host.n(), MAX_HOST)?;
    if pattern.n() > host.n() || pattern.m() > host.m() {
        return Ok(None);
    }
    let n = host.n();
    let nbr: Vec<u32> = (0..n)
        .map(|v| host.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let mut subsets = Vec::new();
    for mask in 1u32..1 << n {
        if connected(host, mask as u64) {
            let boundary = (0..n).filter(|v| mask >> v & 1 == 1).fold(0, |b, v| b | nbr[v]);
            subsets.push((mask, boundary & !mask));
        }
    }
    // small branch sets first: models are usually found early that way
    subsets.sort_by_key(|&(m, _)| (m.count_ones(), m));
    let mut search = Search {
        n,
        pattern,
        order: search_order(pattern),
        subsets,
        phi: vec![0; pattern.n()],
    };
    if !search.assign(0, 0) {
        return Ok(None);
    }
    let branch_sets = search
        .phi
        .iter()
        .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    Ok(Some(MinorModel { branch_sets }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::generators::*;

    #[test]
    fn finds_models() {
        let cases = [
            (cycle(6), cycle(4), true),
            (path(6), cycle(3), false),
            (complete(4), diamond(), true),
            (grid(3, 3), complete(4), true),
            (star(5), path(4), false),
            (cycle(5), star(3), false),
            (Graph::new(3), Graph::new(2), true),
        ];
        for (host, pattern, expect) in cases {
            let model = contains_minor(&host, &pattern).unwrap();
            assert_eq!(model.is_some(), expect, "{host:?} / {pattern:?}");
            if let Some(m) = model {
                assert!(m.is_valid(&host, &pattern));
            }
        }
    }

    #[test]
    fn guards_are_errors() {
        assert!(matches!(contains_minor(&path(13), &path(2)), Err(Error::Guard { .. })));
        assert!(matches!(contains_minor(&path(8), &path(7)), Err(Error::Guard { .. })));
    }

    #[test]
    fn invalid_models_are_rejected() {
        let host = path(4);
        let pattern = path(2);
        let bad = MinorModel {
            branch_sets: vec![vec![0], vec![2]],
        };
        assert!(!bad.is_valid(&host, &pattern));
        let split = MinorModel {
            branch_sets: vec![vec![0, 2], vec![1]],
        };
        assert!(!split.is_valid(&host, &pattern));
    }
}
