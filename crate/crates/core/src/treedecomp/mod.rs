//! Tree decompositions: validation, heuristic and exact construction, PACE
//! `.td` I/O, and conversion to nice form.

mod elimination;
mod nice;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use elimination::{exact_td_small, heuristic_td, min_fill_ordering, td_from_ordering, EXACT_LIMIT};
pub use nice::{augment_universal, make_nice, make_nice_v0, NiceNode, NiceTreeDecomposition, NodeKind};

/// Bags (sorted vertex lists) joined by tree edges between bag indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Sorts and deduplicates every bag.
    pub fn new(mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest bag size minus one (zero when every bag is empty).
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// One failed condition of a tree decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The bag graph has the wrong number of edges, a bad endpoint, or a cycle.
    NotATree(String),
    VertexOutOfRange {
        bag: usize,
        vertex: usize,
    },
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    /// The bags holding this vertex do not form a connected subtree.
    VertexSubtreeDisconnected(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(why) => write!(f, "bags do not form a tree: {why}"),
            Violation::VertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} holds vertex {vertex}, which is not in the graph")
            }
            Violation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            Violation::EdgeUncovered(u, v) => write!(f, "edge {{{u}, {v}}} is in no bag"),
            Violation::VertexSubtreeDisconnected(v) => {
                write!(f, "bags containing vertex {v} are not connected")
            }
        }
    }
}

/// Checks the tree shape, vertex and edge coverage, and connectivity of each
/// vertex's bags. Returns every violation found.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let nb = td.bags.len();
    if nb == 0 {
        out.push(Violation::NotATree("no bags".into()));
        return Err(out);
    }
    if td.edges.len() + 1 != nb {
        out.push(Violation::NotATree(format!(
            "{} bags need {} tree edges, found {}",
            nb,
            nb - 1,
            td.edges.len()
        )));
    }
    if let Some(&(a, b)) = td.edges.iter().find(|&&(a, b)| a >= nb || b >= nb || a == b) {
        out.push(Violation::NotATree(format!("bad tree edge ({a}, {b})")));
        return Err(out);
    }
    let adj = td.adjacency();
    if out.is_empty() && reachable(&adj, 0, |_| true).iter().filter(|&&r| r).count() != nb {
        out.push(Violation::NotATree("bag graph is disconnected".into()));
    }

    let n = g.n();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                out.push(Violation::VertexOutOfRange { bag: i, vertex: v });
            } else {
                holders[v].push(i);
            }
        }
    }
    for (v, hs) in holders.iter().enumerate() {
        if hs.is_empty() {
            out.push(Violation::VertexUncovered(v));
        }
    }
    for (u, v) in g.edges() {
        let covered = holders[u].iter().any(|&i| td.bags[i].binary_search(&v).is_ok());
        if !covered {
            out.push(Violation::EdgeUncovered(u, v));
        }
    }
    let is_tree = !out.iter().any(|x| matches!(x, Violation::NotATree(_)));
    if is_tree {
        for (v, hs) in holders.iter().enumerate() {
            if hs.len() > 1 {
                let mut mark = vec![false; nb];
                for &i in hs {
                    mark[i] = true;
                }
                let seen = reachable(&adj, hs[0], |i| mark[i]);
                if hs.iter().any(|&i| !seen[i]) {
                    out.push(Violation::VertexSubtreeDisconnected(v));
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Parses PACE `.td`: `s td <bags> <max bag size> <n>`, then `b <id> <vertices>`
/// lines and tree edges, all 1-based.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::parse(line_no, format!("`{s}` is not a non-negative integer")))
        };
        match fields[0] {
            "s" => {
                if header.is_some() {
                    return Err(Error::parse(line_no, "second solution line"));
                }
                if fields.len() != 5 || fields[1] != "td" {
                    return Err(Error::parse(line_no, "expected `s td <bags> <max bag> <n>`"));
                }
                let nb = num(fields[2])?;
                header = Some((nb, num(fields[3])?, num(fields[4])?));
                bags = vec![None; nb];
            }
            "b" => {
                let (nb, max_bag, n) = header.ok_or_else(|| Error::parse(line_no, "bag before the solution line"))?;
                if fields.len() < 2 {
                    return Err(Error::parse(line_no, "bag line without an id"));
                }
                let id = num(fields[1])?;
                if id == 0 || id > nb {
                    return Err(Error::parse(line_no, format!("bag id {id} out of range")));
                }
                if bags[id - 1].is_some() {
                    return Err(Error::parse(line_no, format!("bag {id} listed twice")));
                }
                let mut bag = Vec::new();
                for f in &fields[2..] {
                    let v = num(f)?;
                    if v == 0 || v > n {
                        return Err(Error::parse(line_no, format!("vertex {v} out of range")));
                    }
                    bag.push(v - 1);
                }
                bag.sort_unstable();
                if bag.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::parse(line_no, "vertex repeated in a bag"));
                }
                if bag.len() > max_bag {
                    return Err(Error::parse(line_no, "bag larger than the declared maximum"));
                }
                bags[id - 1] = Some(bag);
            }
            _ => {
                let (nb, _, _) = header.ok_or_else(|| Error::parse(line_no, "edge before the solution line"))?;
                if fields.len() != 2 {
                    return Err(Error::parse(line_no, "expected two bag ids"));
                }
                let (a, b) = (num(fields[0])?, num(fields[1])?);
                if a == 0 || b == 0 || a > nb || b > nb {
                    return Err(Error::parse(line_no, "tree edge endpoint out of range"));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    if header.is_none() {
        return Err(Error::parse(0, "missing `s td` line"));
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(0, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition { bags, edges })
}

/// Writes PACE `.td` for a graph on `n` vertices.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.bags.len(), td.max_bag_size(), n);
    for (i, bag) in td.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cycle, path};

    fn path_td() -> TreeDecomposition {
        TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![(0, 1), (1, 2)])
    }

    #[test]
    fn accepts_a_valid_decomposition() {
        assert_eq!(validate_td(&path(4), &path_td()), Ok(()));
        assert_eq!(path_td().width(), 1);
    }

    #[test]
    fn reports_each_kind_of_violation() {
        let g = cycle(4);
        let errs = validate_td(&g, &path_td()).unwrap_err();
        assert!(errs.contains(&Violation::EdgeUncovered(0, 3)));

        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2], vec![1, 2, 3]], vec![(0, 1), (1, 2)]);
        let errs = validate_td(&path(4), &td).unwrap_err();
        assert!(errs.contains(&Violation::VertexSubtreeDisconnected(1)));

        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2, 3]], vec![]);
        let errs = validate_td(&path(4), &td).unwrap_err();
        assert!(matches!(errs[0], Violation::NotATree(_)));

        let td = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![]);
        let errs = validate_td(&path(4), &td).unwrap_err();
        assert!(errs.contains(&Violation::VertexUncovered(3)));

        let td = TreeDecomposition::new(vec![vec![0, 9]], vec![]);
        assert!(validate_td(&path(1), &td).is_err());
    }

    #[test]
    fn td_round_trip() {
        let td = path_td();
        let text = write_td(&td, 4);
        assert!(text.starts_with("s td 3 2 4\n"));
        assert_eq!(parse_td(&text).unwrap(), td);
    }

    #[test]
    fn td_parse_errors() {
        for bad in [
            "b 1 1\n",
            "s td 1 1 2\nb 2 1\n",
            "s td 1 1 2\nb 1 3\n",
            "s td 1 1 2\nb 1 1 2\n",
            "s td 2 1 2\nb 1 1\n",
            "s td 2 1 2\nb 1 1\nb 2 2\n1 3\n",
        ] {
            assert!(matches!(parse_td(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }
}
