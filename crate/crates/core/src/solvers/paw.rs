//! Paw-deletion on the graph plus a universal vertex `v0`.
//!
//! Without a paw topological minor every component is a cycle or a tree. Kept
//! vertices are labelled as cycle vertices, whose degree is tracked and must
//! reach exactly two, or as forest vertices. Forest vertices are joined to
//! `v0` through a chosen subset `s0` so that the forest plus `v0` is a tree;
//! the count `e = n - m` of the partial forest must equal its number of
//! components, the block count of its connectivity partition.

use rustc_hash::FxHashMap;

use super::c4::{add, reduce_all, set_stat};
use super::engine::{Bag, Program};
use super::labels::{get, insert, insert_bit, positions, remove, remove_bit, set};
use super::small::{acyclic, edge_count, ones};
use super::NodeStat;
use crate::par::{self, Exec};
use crate::partitions::WeightedPartitionSet;

const DELETED: u8 = 0;
const FOREST: u8 = 1;
/// Cycle vertex with `z` incident kept edges has label `CYCLE + z`.
const CYCLE: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Key {
    labels: u64,
    s0: u32,
    e: i8,
}

pub(crate) type Table = FxHashMap<Key, WeightedPartitionSet>;

pub(crate) struct Paw {
    pub v0: usize,
}

/// Adjacency of the forest part: graph edges among `forest` and `v0` to `s0`.
fn forest_graph(bag: &Bag, forest: u32, s0: u32) -> Vec<u32> {
    let z = bag.len() - 1;
    let mut adj: Vec<u32> = bag
        .adj
        .iter()
        .enumerate()
        .map(|(i, &a)| if forest >> i & 1 == 1 { a & forest } else { 0 })
        .collect();
    for i in ones(s0) {
        adj[i] |= 1 << z;
    }
    adj[z] = s0;
    adj
}

fn forest(labels: u64, len: usize) -> u32 {
    positions(labels, len, |l| l == FOREST)
}

fn cycle(labels: u64, len: usize) -> u32 {
    positions(labels, len, |l| l >= CYCLE)
}

impl Program for Paw {
    type Table = Table;

    fn leaf(&self) -> Table {
        let key = Key { labels: 0, s0: 0, e: 0 };
        let mut t = Table::default();
        t.insert(key, WeightedPartitionSet::unit(&[], 0).expect("empty ground"));
        t
    }

    fn introduce(&self, bag: &Bag, v: usize, child: Table, _: Exec) -> Table {
        let mut out = Table::default();
        if v == self.v0 {
            for (_, sets) in child {
                let key = Key {
                    labels: FOREST as u64,
                    s0: 0,
                    e: 1,
                };
                out.insert(key, sets.ins(&[v]).expect("bag fits a partition"));
            }
            return out;
        }
        let p = bag.pos(v);
        let k = bag.len();
        for (key, sets) in child {
            let base = insert(key.labels, p, DELETED);
            let s0 = insert_bit(key.s0, p, false);
            add(
                &mut out,
                Key {
                    labels: base,
                    s0,
                    e: key.e,
                },
                sets.clone(),
            );
            let n = ones(bag.adj[p])
                .filter(|&q| get(base, q) != DELETED)
                .fold(0u32, |m, q| m | 1 << q);
            let labels: Vec<u8> = ones(n).map(|q| get(base, q)).collect();

            if n.count_ones() <= 2 && labels.iter().all(|&l| l == CYCLE || l == CYCLE + 1) {
                let labels = ones(n).fold(set(base, p, CYCLE + n.count_ones() as u8), |acc, q| {
                    set(acc, q, get(acc, q) + 1)
                });
                add(&mut out, Key { labels, s0, e: key.e }, sets.clone());
            }

            if labels.iter().all(|&l| l == FOREST) {
                let labels = set(base, p, FOREST);
                let forest = forest(labels, k);
                for joined in [false, true] {
                    let s0 = if joined { s0 | 1 << p } else { s0 };
                    let h = forest_graph(bag, forest, s0);
                    if !acyclic(&h, forest) {
                        continue;
                    }
                    let e = key.e + 1 - h[p].count_ones() as i8;
                    if e < 1 || e as u32 > forest.count_ones() {
                        continue;
                    }
                    let closed = bag.ids(h[p] | 1 << p);
                    let mut next = sets
                        .ins(&[v])
                        .and_then(|s| s.glue(&closed))
                        .expect("bag fits a partition");
                    next.retain_block_count(e as usize);
                    if !next.is_empty() {
                        add(&mut out, Key { labels, s0, e }, next);
                    }
                }
            }
        }
        out
    }

    fn forget(&self, bag: &Bag, v: usize, child: Table, exec: Exec) -> Table {
        let mut out = Table::default();
        if v == self.v0 {
            for (key, set) in child {
                let w = set.min_weight().expect("sets are never empty");
                let key = Key {
                    labels: 0,
                    s0: 0,
                    e: key.e,
                };
                add(&mut out, key, WeightedPartitionSet::unit(&[], w).expect("empty ground"));
            }
            return out;
        }
        let p = bag.pos(v);
        for (key, set) in child {
            let next = match get(key.labels, p) {
                DELETED => set.shift(1),
                FOREST => {
                    let s = set.proj(&[v]).expect("vertex is in the ground");
                    if s.is_empty() {
                        continue;
                    }
                    s
                }
                l if l == CYCLE + 2 => set,
                _ => continue,
            };
            let key = Key {
                labels: remove(key.labels, p),
                s0: remove_bit(key.s0, p),
                e: key.e,
            };
            add(&mut out, key, next);
        }
        reduce_all(exec, out.into_iter().collect()).into_iter().collect()
    }

    fn join(&self, bag: &Bag, left: Table, right: Table, exec: Exec) -> Table {
        let k = bag.len();
        let class = |key: &Key| {
            (
                positions(key.labels, k, |l| l == DELETED),
                forest(key.labels, k),
                key.s0,
            )
        };
        let mut groups: FxHashMap<(u32, u32, u32), Vec<(Key, WeightedPartitionSet)>> = FxHashMap::default();
        for (key, set) in right {
            groups.entry(class(&key)).or_default().push((key, set));
        }
        let left: Vec<(Key, WeightedPartitionSet)> = left.into_iter().collect();
        let parts = par::map(exec, &left, |(lk, ls)| {
            let mut out = Vec::new();
            let Some(rs) = groups.get(&class(lk)) else {
                return out;
            };
            let forest = forest(lk.labels, k);
            let cyc = cycle(lk.labels, k);
            let h = forest_graph(bag, forest, lk.s0);
            let overlap = forest.count_ones() as i8 - edge_count(&h, forest) as i8;
            'pairs: for (rk, rs) in rs {
                let mut labels = lk.labels;
                for i in ones(cyc) {
                    let twice = (bag.adj[i] & cyc).count_ones() as u8;
                    let z = (get(lk.labels, i) - CYCLE) + (get(rk.labels, i) - CYCLE) - twice;
                    if z > 2 {
                        continue 'pairs;
                    }
                    labels = set(labels, i, CYCLE + z);
                }
                let e = lk.e + rk.e - overlap;
                if e < 1 || e as u32 > forest.count_ones() {
                    continue;
                }
                let mut set = ls.join(rs).expect("grounds agree");
                set.retain_block_count(e as usize);
                if !set.is_empty() {
                    out.push((Key { labels, s0: lk.s0, e }, set));
                }
            }
            out
        });
        let mut out = Table::default();
        for (key, set) in parts.into_iter().flatten() {
            add(&mut out, key, set);
        }
        reduce_all(exec, out.into_iter().collect()).into_iter().collect()
    }

    fn measure(&self, bag: &Bag, table: &Table) -> NodeStat {
        set_stat(bag, table.values())
    }
}

pub(crate) fn answer(root: &Table) -> usize {
    root.iter()
        .filter(|(k, _)| k.e == 1)
        .filter_map(|(_, s)| s.min_weight())
        .min()
        .expect("deleting everything is always a solution") as usize
}

#[cfg(test)]
mod tests {
    use crate::graph::generators::{complete, cycle, disjoint_union, grid, paw, star};
    use crate::solvers::{solve, SolveRequest};
    use crate::{Graph, PatternId};

    fn min(g: &Graph) -> usize {
        solve(&SolveRequest::new(g, PatternId::Paw)).unwrap().minimum
    }

    #[test]
    fn cycles_and_trees_are_free() {
        assert_eq!(min(&disjoint_union(&[cycle(3), cycle(7), star(4), Graph::new(2)])), 0);
    }

    #[test]
    fn small_minima() {
        assert_eq!(min(&paw()), 1);
        assert_eq!(min(&complete(5)), 2);
        // two triangles sharing a vertex: removing the shared one leaves two edges
        let bowtie = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        assert_eq!(min(&bowtie), 1);
        assert_eq!(min(&grid(2, 3)), 1);
    }
}
