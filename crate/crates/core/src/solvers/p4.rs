//! `P4`-deletion. Kept bag vertices are labelled by their role in a star or
//! a triangle component:
//!
//! * `LEAF_OPEN` - a leaf whose centre has not appeared yet (degree 0),
//! * `LEAF` - a leaf attached to its centre,
//! * `CENTRE` - a star centre, adjacent to leaves only,
//! * `TRI_OPEN` - in a triangle still missing vertices,
//! * `TRI` - in a complete triangle.

use rustc_hash::FxHashMap;

use super::engine::{Bag, Program};
use super::labels::{get, insert, positions, remove, set};
use super::p3::{classical_stat, keep_min, kept_neighbors, Table, DELETED};
use super::small::ones;
use super::NodeStat;
use crate::par::Exec;

const LEAF_OPEN: u8 = 1;
const LEAF: u8 = 2;
const CENTRE: u8 = 3;
const TRI_OPEN: u8 = 4;
const TRI: u8 = 5;

pub(crate) struct P4;

impl Program for P4 {
    type Table = Table;

    fn leaf(&self) -> Table {
        let mut t = Table::default();
        t.insert(0, 0);
        t
    }

    fn introduce(&self, bag: &Bag, v: usize, child: Table, _: Exec) -> Table {
        let p = bag.pos(v);
        let mut out = Table::default();
        for (key, cost) in child {
            let base = insert(key, p, DELETED);
            keep_min(&mut out, base, cost + 1);
            let n = kept_neighbors(bag, base, p);
            let labels: Vec<(usize, u8)> = ones(n).map(|q| (q, get(base, q))).collect();
            match labels.as_slice() {
                [] => {
                    keep_min(&mut out, set(base, p, LEAF_OPEN), cost);
                    keep_min(&mut out, set(base, p, CENTRE), cost);
                    keep_min(&mut out, set(base, p, TRI_OPEN), cost);
                }
                &[(z, label)] => {
                    if label == CENTRE {
                        keep_min(&mut out, set(base, p, LEAF), cost);
                    }
                    if label == TRI_OPEN && kept_neighbors(bag, base, z) == 0 {
                        keep_min(&mut out, set(base, p, TRI_OPEN), cost);
                    }
                }
                &[(z, TRI_OPEN), (w, TRI_OPEN)]
                    if kept_neighbors(bag, base, z) == 1 << w && kept_neighbors(bag, base, w) == 1 << z =>
                {
                    let key = set(set(set(base, p, TRI), z, TRI), w, TRI);
                    keep_min(&mut out, key, cost);
                }
                _ => {}
            }
            if labels.iter().all(|&(_, l)| l == LEAF_OPEN) && !labels.is_empty() {
                let key = ones(n).fold(set(base, p, CENTRE), |k, q| set(k, q, LEAF));
                keep_min(&mut out, key, cost);
            }
        }
        out
    }

    fn forget(&self, bag: &Bag, v: usize, child: Table, _: Exec) -> Table {
        let p = bag.pos(v);
        let mut out = Table::default();
        for (key, cost) in child {
            if matches!(get(key, p), DELETED | LEAF | CENTRE | TRI) {
                keep_min(&mut out, remove(key, p), cost);
            }
        }
        out
    }

    fn join(&self, bag: &Bag, left: Table, right: Table, exec: Exec) -> Table {
        let k = bag.len();
        let class = |key: u64| (positions(key, k, |l| l == DELETED), positions(key, k, |l| l == CENTRE));
        let mut groups: FxHashMap<(u32, u32), Vec<(u64, u32)>> = FxHashMap::default();
        for (key, cost) in right {
            groups.entry(class(key)).or_default().push((key, cost));
        }
        let left: Vec<(u64, u32)> = left.into_iter().collect();
        let parts = crate::par::map(exec, &left, |&(lk, lc)| {
            let (del, centre) = class(lk);
            let mut out = Vec::new();
            let Some(rs) = groups.get(&(del, centre)) else {
                return out;
            };
            let others: Vec<usize> = (0..k).filter(|&i| (del | centre) >> i & 1 == 0).collect();
            'pairs: for &(rk, rc) in rs {
                let mut key = lk;
                for &i in &others {
                    let merged = match (get(lk, i), get(rk, i)) {
                        (LEAF_OPEN, LEAF_OPEN) => LEAF_OPEN,
                        (LEAF_OPEN, LEAF) | (LEAF, LEAF_OPEN) => LEAF,
                        (LEAF, LEAF) => {
                            // both sides saw the same centre only if it is in the bag
                            let n = bag.adj[i] & !del;
                            if n.count_ones() != 1 || centre & n == 0 {
                                continue 'pairs;
                            }
                            LEAF
                        }
                        (TRI_OPEN, TRI_OPEN) => TRI_OPEN,
                        (TRI_OPEN, TRI) | (TRI, TRI_OPEN) => TRI,
                        (TRI, TRI) => {
                            let both = positions(lk, k, |l| l == TRI) & positions(rk, k, |l| l == TRI);
                            let n = bag.adj[i] & both;
                            let closed = ones(n).any(|z| bag.adj[z] & n != 0);
                            if !closed {
                                continue 'pairs;
                            }
                            TRI
                        }
                        _ => continue 'pairs,
                    };
                    key = set(key, i, merged);
                }
                out.push((key, lc + rc - del.count_ones()));
            }
            out
        });
        let mut out = Table::default();
        for (key, cost) in parts.into_iter().flatten() {
            keep_min(&mut out, key, cost);
        }
        out
    }

    fn measure(&self, bag: &Bag, table: &Table) -> NodeStat {
        classical_stat(bag, table.len(), 6)
    }
}

pub(crate) fn answer(root: &Table) -> usize {
    root[&0] as usize
}
