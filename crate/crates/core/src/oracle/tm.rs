use crate::error::Result;
use crate::graph::Graph;
use crate::oracle::minor::search_order;
use crate::oracle::{guard, MAX_HOST, MAX_PATTERN};

/// A topological minor model: `branch[x]` is the host vertex for pattern
/// vertex `x`, and `paths[i]` is the host path (endpoints included) for the
/// `i`-th pattern edge in [`Graph::edges`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmModel {
    pub branch: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

impl TmModel {
    /// Distinct branch vertices, and internally disjoint host paths between
    /// the right endpoints whose interiors avoid every branch vertex.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        let n = host.n();
        if self.branch.len() != pattern.n() || self.paths.len() != pattern.m() {
            return false;
        }
        let mut used = vec![false; n];
        for &b in &self.branch {
            if b >= n || used[b] {
                return false;
            }
            used[b] = true;
        }
        for ((x, y), path) in pattern.edges().zip(&self.paths) {
            if path.len() < 2 || path[0] != self.branch[x] || path[path.len() - 1] != self.branch[y] {
                return false;
            }
            if path.windows(2).any(|w| !host.has_edge(w[0], w[1])) {
                return false;
            }
            for &v in &path[1..path.len() - 1] {
                if used[v] {
                    return false;
                }
                used[v] = true;
            }
        }
        true
    }
}

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    branch: Vec<usize>,
    placed: Vec<bool>,
    /// Host vertices taken as branch vertices or path interiors.
    used: u32,
    paths: Vec<(usize, usize, Vec<usize>)>,
}

impl Search<'_> {
    fn place(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let x = self.order[i];
        let need = self.pattern.degree(x);
        let pending: Vec<(usize, usize)> = self
            .pattern
            .neighbors(x)
            .iter()
            .filter(|&&y| self.placed[y])
            .map(|&y| (x, y))
            .collect();
        for h in 0..self.host.n() {
            if self.used >> h & 1 == 1 || self.host.degree(h) < need {
                continue;
            }
            self.branch[x] = h;
            self.placed[x] = true;
            self.used |= 1 << h;
            if self.route(i, &pending, 0) {
                return true;
            }
            self.used &= !(1 << h);
            self.placed[x] = false;
        }
        false
    }

    fn route(&mut self, i: usize, pending: &[(usize, usize)], k: usize) -> bool {
        if k == pending.len() {
            return self.place(i + 1);
        }
        let (x, y) = pending[k];
        let (a, b) = (self.branch[x], self.branch[y]);
        let mut path = vec![a];
        self.extend(i, pending, k, b, &mut path)
    }

    /// Depth-first over simple paths from the last vertex of `path` to `target`.
    fn extend(&mut self, i: usize, pending: &[(usize, usize)], k: usize, target: usize, path: &mut Vec<usize>) -> bool {
        let cur = *path.last().expect("non-empty path");
        for idx in 0..self.host.degree(cur) {
            let next = self.host.neighbors(cur)[idx];
            if next == target {
                path.push(next);
                let (x, y) = pending[k];
                self.paths.push((x, y, path.clone()));
                if self.route(i, pending, k + 1) {
                    return true;
                }
                self.paths.pop();
                path.pop();
            } else if self.used >> next & 1 == 0 {
                self.used |= 1 << next;
                path.push(next);
                if self.extend(i, pending, k, target, path) {
                    return true;
                }
                path.pop();
                self.used &= !(1 << next);
            }
        }
        false
    }
}

/// Searches for a topological minor model of `pattern` in `host` over all
/// injective branch-vertex placements and all systems of internally
/// disjoint paths.
pub fn contains_tm(host: &Graph, pattern: &Graph) -> Result<Option<TmModel>> {
    guard("pattern size for topological minor search", pattern.n(), MAX_PATTERN)?;
    guard("host size for topological minor search", host.n(), MAX_HOST)?;
    if pattern.n() > host.n() || pattern.m() > host.m() {
        return Ok(None);
    }
    let mut search = Search {
        host,
        pattern,
        order: search_order(pattern),
        branch: vec![0; pattern.n()],
        placed: vec![false; pattern.n()],
        used: 0,
        paths: Vec::new(),
    };
    if !search.place(0) {
        return Ok(None);
    }
    let paths = pattern
        .edges()
        .map(|(x, y)| {
            search
                .paths
                .iter()
                .find_map(|(a, b, p)| {
                    if (*a, *b) == (x, y) {
                        Some(p.clone())
                    } else if (*a, *b) == (y, x) {
                        Some(p.iter().rev().copied().collect())
                    } else {
                        None
                    }
                })
                .expect("every pattern edge is routed")
        })
        .collect();
    Ok(Some(TmModel {
        branch: search.branch,
        paths,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::oracle::contains_minor;

    #[test]
    fn finds_subdivisions() {
        let cases = [
            (cycle(7), cycle(4), true),
            (paw(), cycle(4), false),
            (diamond(), cycle(4), true),
            (star(3), path(4), false),
            (chair(), star(3), true),
            (complete(4), star(4), false),
            (path(5), path(3), true),
        ];
        for (host, pattern, expect) in cases {
            let model = contains_tm(&host, &pattern).unwrap();
            assert_eq!(model.is_some(), expect, "{host:?} / {pattern:?}");
            if let Some(m) = model {
                assert!(m.is_valid(&host, &pattern));
            }
        }
    }

    #[test]
    fn star_minor_is_not_a_topological_minor() {
        // a path of two degree-3 vertices has a K1,4 minor but no K1,4 subdivision
        let host = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]).unwrap();
        assert!(contains_minor(&host, &star(4)).unwrap().is_some());
        assert!(contains_tm(&host, &star(4)).unwrap().is_none());
    }

    #[test]
    fn rejects_overlapping_paths() {
        let host = path(3);
        let pattern = path(2);
        let m = TmModel {
            branch: vec![0, 2],
            paths: vec![vec![0, 2]],
        };
        assert!(!m.is_valid(&host, &pattern));
    }
}
