//! `P3`-deletion. Each bag vertex is deleted, or kept with degree 0 or 1 in
//! the partial solution.

use rustc_hash::FxHashMap;

use super::engine::{Bag, Program};
use super::labels::{get, insert, remove, set};
use super::small::ones;
use super::NodeStat;
use crate::par::Exec;

pub(crate) type Table = FxHashMap<u64, u32>;

pub(crate) const DELETED: u8 = 0;
const DEG0: u8 = 1;
const DEG1: u8 = 2;

pub(crate) struct P3;

pub(crate) fn keep_min(t: &mut Table, key: u64, cost: u32) {
    t.entry(key).and_modify(|c| *c = (*c).min(cost)).or_insert(cost);
}

/// Kept neighbours of position `p` in the bag.
pub(crate) fn kept_neighbors(bag: &Bag, key: u64, p: usize) -> u32 {
    ones(bag.adj[p])
        .filter(|&q| get(key, q) != DELETED)
        .fold(0, |m, q| m | 1 << q)
}

impl Program for P3 {
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
            let kept = kept_neighbors(bag, base, p);
            match kept.count_ones() {
                0 => keep_min(&mut out, set(base, p, DEG0), cost),
                1 => {
                    let q = kept.trailing_zeros() as usize;
                    if get(base, q) == DEG0 {
                        keep_min(&mut out, set(set(base, p, DEG1), q, DEG1), cost);
                    }
                }
                _ => {}
            }
        }
        out
    }

    fn forget(&self, bag: &Bag, v: usize, child: Table, _: Exec) -> Table {
        let p = bag.pos(v);
        let mut out = Table::default();
        for (key, cost) in child {
            keep_min(&mut out, remove(key, p), cost);
        }
        out
    }

    fn join(&self, bag: &Bag, left: Table, right: Table, exec: Exec) -> Table {
        degree_join(bag, left, right, 1, exec)
    }

    fn measure(&self, bag: &Bag, table: &Table) -> NodeStat {
        classical_stat(bag, table.len(), 3)
    }
}

pub(crate) fn classical_stat(bag: &Bag, entries: usize, labels: u32) -> NodeStat {
    NodeStat {
        bag: bag.len(),
        entries,
        max_set: 0,
        total: entries,
        within_bound: (entries as f64) <= (labels as f64).powi(bag.len() as i32),
    }
}

/// Join for programs whose kept labels are `1 + degree` with degree at most
/// `d`: both sides must delete the same vertices, and a kept vertex's degree
/// is the sum of both sides minus the bag edges counted twice.
pub(crate) fn degree_join(bag: &Bag, left: Table, right: Table, d: u8, exec: Exec) -> Table {
    let k = bag.len();
    let deleted = |key: u64| super::labels::positions(key, k, |l| l == DELETED);
    let mut groups: FxHashMap<u32, Vec<(u64, u32)>> = FxHashMap::default();
    for (key, cost) in right {
        groups.entry(deleted(key)).or_default().push((key, cost));
    }
    let left: Vec<(u64, u32)> = left.into_iter().collect();
    let parts = crate::par::map(exec, &left, |&(lk, lc)| {
        let del = deleted(lk);
        let shared: Vec<(usize, u8)> = (0..k)
            .filter(|&i| del >> i & 1 == 0)
            .map(|i| (i, (bag.adj[i] & !del).count_ones() as u8))
            .collect();
        let mut out = Vec::new();
        if let Some(rs) = groups.get(&del) {
            'pairs: for &(rk, rc) in rs {
                let mut key = lk;
                for &(i, twice) in &shared {
                    let deg = (get(lk, i) - 1) + (get(rk, i) - 1) - twice;
                    if deg > d {
                        continue 'pairs;
                    }
                    key = set(key, i, deg + 1);
                }
                out.push((key, lc + rc - del.count_ones()));
            }
        }
        out
    });
    let mut out = Table::default();
    for (key, cost) in parts.into_iter().flatten() {
        keep_min(&mut out, key, cost);
    }
    out
}

pub(crate) fn answer(root: &Table) -> usize {
    root[&0] as usize
}
