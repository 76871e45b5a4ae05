//! `C4`-deletion on the graph plus a universal vertex `v0`.
//!
//! A graph has no `C4` topological minor iff it is diamond-free and every
//! component satisfies `n - m + triangles = 1`. Kept vertices are joined to
//! `v0` through a chosen subset `s0` so that the kept graph plus `v0` is
//! connected; the count `e = n - m + triangles` of the partial solution must
//! then equal its number of components, which is the block count of its
//! connectivity partition over the kept bag vertices.

use rustc_hash::FxHashMap;

use super::engine::{Bag, Program};
use super::labels::{insert_bit, pair, pairs_insert, pairs_remove, remove_bit};
use super::small::{c4_free, edge_count, ones, triangles};
use super::NodeStat;
use crate::par::{self, Exec};
use crate::partitions::WeightedPartitionSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Key {
    /// Kept bag positions, `v0` included.
    kept: u32,
    /// Kept positions joined to `v0`.
    s0: u32,
    /// Bag pairs that are edges of a triangle of the partial solution.
    tri: u128,
    e: i8,
}

pub(crate) type Table = FxHashMap<Key, WeightedPartitionSet>;

pub(crate) struct C4 {
    pub v0: usize,
}

/// Adjacency of the kept part: graph edges among `kept` and `v0` to `s0`.
fn kept_graph(bag: &Bag, kept: u32, s0: u32) -> Vec<u32> {
    let z = bag.len() - 1;
    let mut adj: Vec<u32> = bag
        .adj
        .iter()
        .enumerate()
        .map(|(i, &a)| if kept >> i & 1 == 1 { a & kept } else { 0 })
        .collect();
    for i in ones(s0) {
        adj[i] |= 1 << z;
    }
    adj[z] = s0;
    adj
}

fn unit(ground: &[usize]) -> WeightedPartitionSet {
    WeightedPartitionSet::unit(ground, 0).expect("bag fits a partition")
}

pub(crate) fn reduce_all<K: Send>(exec: Exec, table: Vec<(K, WeightedPartitionSet)>) -> Vec<(K, WeightedPartitionSet)> {
    par::map_owned(exec, table, |(k, s)| (k, s.reduce()))
}

impl Program for C4 {
    type Table = Table;

    fn leaf(&self) -> Table {
        let key = Key {
            kept: 0,
            s0: 0,
            tri: 0,
            e: 0,
        };
        let mut t = Table::default();
        t.insert(key, unit(&[]));
        t
    }

    fn introduce(&self, bag: &Bag, v: usize, child: Table, _: Exec) -> Table {
        let mut out = Table::default();
        if v == self.v0 {
            for (_, set) in child {
                let key = Key {
                    kept: 1,
                    s0: 0,
                    tri: 0,
                    e: 1,
                };
                out.insert(key, set.ins(&[v]).expect("bag fits a partition"));
            }
            return out;
        }
        let p = bag.pos(v);
        let mut free_cache: FxHashMap<(u32, u32), bool> = FxHashMap::default();
        for (key, set) in child {
            let kept0 = insert_bit(key.kept, p, false);
            let s0 = insert_bit(key.s0, p, false);
            let tri0 = pairs_insert(key.tri, p);
            add(
                &mut out,
                Key {
                    kept: kept0,
                    s0,
                    tri: tri0,
                    e: key.e,
                },
                set.clone(),
            );
            for joined in [false, true] {
                let kept = kept0 | 1 << p;
                let s0 = if joined { s0 | 1 << p } else { s0 };
                let h = kept_graph(bag, kept, s0);
                if !*free_cache.entry((kept, s0)).or_insert_with(|| c4_free(&h, kept)) {
                    continue;
                }
                let n = h[p];
                let mut tri = tri0;
                let mut fresh = 0i8;
                let mut clash = false;
                for a in ones(n) {
                    for b in ones(n & h[a] & !((2u32 << a) - 1)) {
                        clash |= tri0 >> pair(a, b) & 1 == 1;
                        fresh += 1;
                        tri |= 1 << pair(a, b) | 1 << pair(a, p) | 1 << pair(b, p);
                    }
                }
                let e = key.e + 1 - n.count_ones() as i8 + fresh;
                if clash || e < 1 || e as u32 > kept.count_ones() {
                    continue;
                }
                let closed: Vec<usize> = bag.ids(n | 1 << p);
                let mut next = set
                    .ins(&[v])
                    .and_then(|s| s.glue(&closed))
                    .expect("bag fits a partition");
                next.retain_block_count(e as usize);
                if !next.is_empty() {
                    add(&mut out, Key { kept, s0, tri, e }, next);
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
                    kept: 0,
                    s0: 0,
                    tri: 0,
                    e: key.e,
                };
                let single = WeightedPartitionSet::unit(&[], w).expect("empty ground");
                add(&mut out, key, single);
            }
            return out;
        }
        let p = bag.pos(v);
        for (key, set) in child {
            let next = if key.kept >> p & 1 == 0 {
                set.shift(1)
            } else {
                let s = set.proj(&[v]).expect("vertex is in the ground");
                if s.is_empty() {
                    continue;
                }
                s
            };
            let key = Key {
                kept: remove_bit(key.kept, p),
                s0: remove_bit(key.s0, p),
                tri: pairs_remove(key.tri, p),
                e: key.e,
            };
            add(&mut out, key, next);
        }
        reduce_all(exec, out.into_iter().collect()).into_iter().collect()
    }

    fn join(&self, bag: &Bag, left: Table, right: Table, exec: Exec) -> Table {
        let mut groups: FxHashMap<(u32, u32), Vec<(Key, WeightedPartitionSet)>> = FxHashMap::default();
        for (key, set) in right {
            groups.entry((key.kept, key.s0)).or_default().push((key, set));
        }
        let left: Vec<(Key, WeightedPartitionSet)> = left.into_iter().collect();
        let parts = par::map(exec, &left, |(lk, ls)| {
            let mut out = Vec::new();
            let Some(rs) = groups.get(&(lk.kept, lk.s0)) else {
                return out;
            };
            let h = kept_graph(bag, lk.kept, lk.s0);
            let (t, shared_tri) = triangles(&h, lk.kept);
            let overlap = lk.kept.count_ones() as i8 - edge_count(&h, lk.kept) as i8 + t as i8;
            for (rk, rs) in rs {
                if lk.tri & rk.tri != shared_tri {
                    continue;
                }
                let e = lk.e + rk.e - overlap;
                if e < 1 || e as u32 > lk.kept.count_ones() {
                    continue;
                }
                let mut set = ls.join(rs).expect("grounds agree");
                set.retain_block_count(e as usize);
                if !set.is_empty() {
                    let key = Key {
                        kept: lk.kept,
                        s0: lk.s0,
                        tri: lk.tri | rk.tri,
                        e,
                    };
                    out.push((key, set));
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

pub(crate) fn add<K: std::hash::Hash + Eq>(
    t: &mut FxHashMap<K, WeightedPartitionSet>,
    key: K,
    set: WeightedPartitionSet,
) {
    match t.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut o) => {
            o.get_mut().absorb(&set).expect("grounds agree");
        }
        std::collections::hash_map::Entry::Vacant(slot) => {
            slot.insert(set);
        }
    }
}

/// Each stored set must fit the rank bound `2^|ground|`.
pub(crate) fn set_stat<'a>(bag: &Bag, sets: impl Iterator<Item = &'a WeightedPartitionSet> + Clone) -> NodeStat {
    let entries = sets.clone().count();
    let mut max_set = 0;
    let mut total = 0;
    let mut within_bound = true;
    for s in sets {
        max_set = max_set.max(s.len());
        total += s.len();
        within_bound &= s.len() <= 1 << s.ground().len();
    }
    NodeStat {
        bag: bag.len(),
        entries,
        max_set,
        total,
        within_bound,
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
    use super::*;
    use crate::solvers::small::component_count;

    #[test]
    fn kept_graph_adds_universal_edges() {
        let g = crate::graph::generators::path(3);
        let bag = Bag::new(&g, &[0, 1, 2, 3]);
        let h = kept_graph(&bag, 0b1011, 0b0001);
        assert_eq!(h, vec![0b1010, 0b0001, 0b0000, 0b0001]);
        assert_eq!(component_count(&h, 0b1011), 1);
    }
}
