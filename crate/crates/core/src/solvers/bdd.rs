//! Deletion to maximum degree `d`. Each bag vertex is deleted or kept with
//! its current degree `0..=d` in the partial solution.

use super::engine::{Bag, Program};
use super::labels::{get, insert, remove, set};
use super::p3::{classical_stat, degree_join, keep_min, kept_neighbors, Table, DELETED};
use super::small::ones;
use super::NodeStat;
use crate::par::Exec;

/// Labels `1 + degree` must fit in four bits.
pub(crate) const MAX_DEGREE: usize = 14;

pub(crate) struct BoundedDegree {
    pub d: u8,
}

impl Program for BoundedDegree {
    type Table = Table;

    fn leaf(&self) -> Table {
        let mut t = Table::default();
        t.insert(0, 0);
        t
    }

    fn introduce(&self, bag: &Bag, v: usize, child: Table, _: Exec) -> Table {
        let p = bag.pos(v);
        let mut out = Table::default();
        'entries: for (key, cost) in child {
            let base = insert(key, p, DELETED);
            keep_min(&mut out, base, cost + 1);
            let kept = kept_neighbors(bag, base, p);
            if kept.count_ones() > self.d as u32 {
                continue;
            }
            let mut next = set(base, p, 1 + kept.count_ones() as u8);
            for q in ones(kept) {
                let label = get(next, q) + 1;
                if label > self.d + 1 {
                    continue 'entries;
                }
                next = set(next, q, label);
            }
            keep_min(&mut out, next, cost);
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
        degree_join(bag, left, right, self.d, exec)
    }

    fn measure(&self, bag: &Bag, table: &Table) -> NodeStat {
        classical_stat(bag, table.len(), self.d as u32 + 2)
    }
}

pub(crate) fn answer(root: &Table) -> usize {
    root[&0] as usize
}
