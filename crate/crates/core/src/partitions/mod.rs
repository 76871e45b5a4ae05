//! Set partitions of small ground sets and weighted sets of them.
//!
//! A partition is stored as a packed code: element `i` of the (sorted) ground
//! gets four bits holding the index of the smallest element of its block.
//! Equal partitions therefore have equal codes, and codes order partitions
//! canonically. Grounds are limited to [`MAX_GROUND`] elements.
//!
//! The order used here makes the one-block partition the bottom element:
//! `p.coarsens(q)` holds when every block of `q` lies inside a block of `p`.
//! [`Partition::meet`] merges transitively (the coarser result) and
//! [`Partition::lattice_join`] intersects blocks.

mod code;
mod reduce;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub use reduce::{reduce_counters, ReduceCounters};

pub type Weight = u64;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    ground: Vec<usize>,
    code: u64,
}

fn check_ground(ground: &[usize]) -> Result<Vec<usize>> {
    let mut g = ground.to_vec();
    g.sort_unstable();
    if g.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Partition("ground contains a repeated element".into()));
    }
    if g.len() > MAX_GROUND {
        return Err(Error::Guard {
            what: "partition ground size",
            actual: g.len(),
            limit: MAX_GROUND,
        });
    }
    Ok(g)
}

fn positions(ground: &[usize], xs: &[usize]) -> Result<Vec<usize>> {
    xs.iter()
        .map(|x| {
            ground
                .binary_search(x)
                .map_err(|_| Error::Partition(format!("element {x} is not in the ground set")))
        })
        .collect()
}

fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

impl Partition {
    /// All singletons over `ground`.
    pub fn singletons(ground: &[usize]) -> Result<Self> {
        let ground = check_ground(ground)?;
        let code = code::singletons(ground.len());
        Ok(Partition { ground, code })
    }

    /// The one-block partition `{ground}`.
    pub fn whole(ground: &[usize]) -> Result<Self> {
        let ground = check_ground(ground)?;
        Ok(Partition { code: 0, ground })
    }

    /// `ground[S]`: the elements of `s` form one block, everything else is a
    /// singleton. With `s` empty or a single element this is all singletons.
    pub fn merged(ground: &[usize], s: &[usize]) -> Result<Self> {
        let ground = check_ground(ground)?;
        let pos = positions(&ground, s)?;
        let code = code::merge_positions(code::singletons(ground.len()), ground.len(), &pos);
        Ok(Partition { ground, code })
    }

    /// Builds a partition from explicit blocks, which must cover `ground`
    /// exactly once.
    pub fn from_blocks(ground: &[usize], blocks: &[Vec<usize>]) -> Result<Self> {
        let ground = check_ground(ground)?;
        let mut label = vec![u8::MAX; ground.len()];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Partition("empty block".into()));
            }
            for i in positions(&ground, block)? {
                if label[i] != u8::MAX {
                    return Err(Error::Partition(format!("element {} in two blocks", ground[i])));
                }
                label[i] = b as u8;
            }
        }
        if let Some(i) = label.iter().position(|&l| l == u8::MAX) {
            return Err(Error::Partition(format!("element {} in no block", ground[i])));
        }
        Ok(Partition {
            code: code::from_labels(&label),
            ground,
        })
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    /// Blocks as sorted element lists, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        code::blocks(self.code, self.ground.len())
            .into_iter()
            .map(|b| b.into_iter().map(|i| self.ground[i]).collect())
            .collect()
    }

    pub fn block_count(&self) -> usize {
        code::block_count(self.code, self.ground.len())
    }

    pub fn same_block(&self, a: usize, b: usize) -> Result<bool> {
        let p = positions(&self.ground, &[a, b])?;
        Ok(code::get(self.code, p[0]) == code::get(self.code, p[1]))
    }

    fn same_ground(&self, other: &Partition) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::Partition("ground sets differ".into()));
        }
        Ok(())
    }

    /// Whether every block of `other` lies inside a block of `self`.
    pub fn coarsens(&self, other: &Partition) -> Result<bool> {
        self.same_ground(other)?;
        let k = self.ground.len();
        Ok((0..k).all(|i| code::get(self.code, i) == code::get(self.code, code::get(other.code, i))))
    }

    /// Transitive merge of both partitions.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_ground(other)?;
        Ok(Partition {
            ground: self.ground.clone(),
            code: code::meet(self.code, other.code, self.ground.len()),
        })
    }

    /// Blockwise intersection of both partitions.
    pub fn lattice_join(&self, other: &Partition) -> Result<Partition> {
        self.same_ground(other)?;
        Ok(Partition {
            ground: self.ground.clone(),
            code: code::intersect(self.code, other.code, self.ground.len()),
        })
    }

    /// Restriction to `x`, which must be a subset of the ground.
    pub fn restrict_down(&self, x: &[usize]) -> Result<Partition> {
        let x = check_ground(x)?;
        let keep = positions(&self.ground, &x)?;
        Ok(Partition {
            code: code::restrict(self.code, &keep),
            ground: x,
        })
    }

    /// Extension to `x`, a superset of the ground; new elements are singletons.
    pub fn lift_up(&self, x: &[usize]) -> Result<Partition> {
        let x = check_ground(x)?;
        let map = positions(&x, &self.ground)?;
        Ok(Partition {
            code: code::lift(self.code, self.ground.len(), &map, x.len()),
            ground: x,
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let ids: Vec<String> = b.iter().map(usize::to_string).collect();
                format!("[{}]", ids.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A set of partitions over one ground, each with a weight. At most one
/// entry per partition is kept, the lightest (reduce-minimal-copies).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPartitionSet {
    ground: Vec<usize>,
    entries: BTreeMap<u64, Weight>,
}

impl WeightedPartitionSet {
    pub fn new(ground: &[usize]) -> Result<Self> {
        Ok(WeightedPartitionSet {
            ground: check_ground(ground)?,
            entries: BTreeMap::new(),
        })
    }

    /// `{(all singletons over ground, w)}`.
    pub fn unit(ground: &[usize], w: Weight) -> Result<Self> {
        let mut set = Self::new(ground)?;
        let k = set.ground.len();
        set.entries.insert(code::singletons(k), w);
        Ok(set)
    }

    pub fn from_entries<I>(ground: &[usize], entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, Weight)>,
    {
        let mut set = Self::new(ground)?;
        for (p, w) in entries {
            set.insert(&p, w)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, p: &Partition, w: Weight) -> Result<()> {
        if p.ground != self.ground {
            return Err(Error::Partition("ground sets differ".into()));
        }
        self.insert_code(p.code, w);
        Ok(())
    }

    fn insert_code(&mut self, code: u64, w: Weight) {
        self.entries
            .entry(code)
            .and_modify(|old| *old = (*old).min(w))
            .or_insert(w);
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_weight(&self) -> Option<Weight> {
        self.entries.values().copied().min()
    }

    pub fn weight_of(&self, p: &Partition) -> Option<Weight> {
        if p.ground != self.ground {
            return None;
        }
        self.entries.get(&p.code).copied()
    }

    /// Entries in canonical partition order.
    pub fn iter(&self) -> impl Iterator<Item = (Partition, Weight)> + '_ {
        self.entries.iter().map(|(&code, &w)| {
            (
                Partition {
                    ground: self.ground.clone(),
                    code,
                },
                w,
            )
        })
    }

    /// Union keeping the lightest copy of each partition.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.absorb(other)?;
        Ok(out)
    }

    pub fn absorb(&mut self, other: &Self) -> Result<()> {
        if other.ground != self.ground {
            return Err(Error::Partition("ground sets differ".into()));
        }
        for (&code, &w) in &other.entries {
            self.insert_code(code, w);
        }
        Ok(())
    }

    /// Adds the elements of `x` (disjoint from the ground) as singletons.
    pub fn ins(&self, x: &[usize]) -> Result<Self> {
        if x.iter().any(|e| self.ground.binary_search(e).is_ok()) {
            return Err(Error::Partition("inserted elements overlap the ground".into()));
        }
        let ground = check_ground(&sorted_union(&self.ground, x))?;
        Ok(self.lifted(ground))
    }

    fn lifted(&self, ground: Vec<usize>) -> Self {
        let map: Vec<usize> = self
            .ground
            .iter()
            .map(|e| ground.binary_search(e).expect("superset"))
            .collect();
        let k = self.ground.len();
        let entries = self
            .entries
            .iter()
            .map(|(&c, &w)| (code::lift(c, k, &map, ground.len()), w))
            .collect();
        WeightedPartitionSet { ground, entries }
    }

    /// Adds `w` to every weight.
    pub fn shift(&self, w: Weight) -> Self {
        WeightedPartitionSet {
            ground: self.ground.clone(),
            entries: self.entries.iter().map(|(&c, &x)| (c, x + w)).collect(),
        }
    }

    /// Extends the ground by `s` and merges all of `s` into one block.
    pub fn glue(&self, s: &[usize]) -> Result<Self> {
        let ground = check_ground(&sorted_union(&self.ground, s))?;
        let lifted = if ground.len() == self.ground.len() {
            self.clone()
        } else {
            self.lifted(ground)
        };
        let pos = positions(&lifted.ground, s)?;
        let k = lifted.ground.len();
        let mut out = WeightedPartitionSet {
            ground: lifted.ground.clone(),
            entries: BTreeMap::new(),
        };
        for (&c, &w) in &lifted.entries {
            out.insert_code(code::merge_positions(c, k, &pos), w);
        }
        Ok(out)
    }

    /// `glue({u, v})` followed by `shift(w)`.
    pub fn glue_w(&self, w: Weight, u: usize, v: usize) -> Result<Self> {
        Ok(self.glue(&[u, v])?.shift(w))
    }

    /// Forgets the elements of `x`. An entry survives only if every element of
    /// `x` shares its block with some element outside `x`; survivors are
    /// restricted to the remaining ground.
    pub fn proj(&self, x: &[usize]) -> Result<Self> {
        let drop = positions(&self.ground, x)?;
        let k = self.ground.len();
        let mut dropped = vec![false; k];
        for &i in &drop {
            dropped[i] = true;
        }
        let keep: Vec<usize> = (0..k).filter(|&i| !dropped[i]).collect();
        let ground: Vec<usize> = keep.iter().map(|&i| self.ground[i]).collect();
        let mut out = WeightedPartitionSet {
            ground,
            entries: BTreeMap::new(),
        };
        for (&c, &w) in &self.entries {
            let anchored = drop.iter().all(|&i| {
                let b = code::get(c, i);
                keep.iter().any(|&j| code::get(c, j) == b)
            });
            if anchored {
                out.insert_code(code::restrict(c, &keep), w);
            }
        }
        Ok(out)
    }

    /// Lifts both sets to the union of their grounds and combines every pair by
    /// meet, adding weights.
    pub fn join(&self, other: &Self) -> Result<Self> {
        let ground = check_ground(&sorted_union(&self.ground, &other.ground))?;
        let a = if ground == self.ground {
            self.clone()
        } else {
            self.lifted(ground.clone())
        };
        let b = if ground == other.ground {
            other.clone()
        } else {
            other.lifted(ground.clone())
        };
        let k = ground.len();
        let mut out = WeightedPartitionSet {
            ground,
            entries: BTreeMap::new(),
        };
        for (&ca, &wa) in &a.entries {
            for (&cb, &wb) in &b.entries {
                out.insert_code(code::meet(ca, cb, k), wa + wb);
            }
        }
        Ok(out)
    }

    /// Drops every entry whose number of blocks is not `blocks`.
    pub fn retain_block_count(&mut self, blocks: usize) {
        let k = self.ground.len();
        self.entries.retain(|&c, _| code::block_count(c, k) == blocks);
    }

    /// Lightest weight among entries `p` with `p meet q` a single block.
    pub fn opt(&self, q: &Partition) -> Result<Option<Weight>> {
        if q.ground != self.ground {
            return Err(Error::Partition("ground sets differ".into()));
        }
        let k = self.ground.len();
        Ok(self
            .entries
            .iter()
            .filter(|(&c, _)| code::block_count(code::meet(c, q.code, k), k) <= 1)
            .map(|(_, &w)| w)
            .min())
    }

    /// A subset of at most `2^(|ground| - 1)` entries that represents this
    /// set: for every partition `q`, `opt(q)` is unchanged.
    pub fn reduce(&self) -> Self {
        let entries = reduce::reduce(self.ground.len(), &self.entries);
        WeightedPartitionSet {
            ground: self.ground.clone(),
            entries,
        }
    }
}

impl fmt::Display for WeightedPartitionSet {
    /// One entry per line: the blocks, then the weight.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, w) in self.iter() {
            writeln!(f, "{p} {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ground: &[usize], blocks: &[&[usize]]) -> Partition {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        Partition::from_blocks(ground, &blocks).unwrap()
    }

    #[test]
    fn blocks_are_canonical() {
        let a = p(&[3, 5, 9], &[&[9, 3], &[5]]);
        let b = p(&[9, 5, 3], &[&[5], &[3, 9]]);
        assert_eq!(a, b);
        assert_eq!(a.blocks(), vec![vec![3, 9], vec![5]]);
        assert_eq!(a.to_string(), "[3 9] [5]");
    }

    #[test]
    fn from_blocks_rejects_bad_covers() {
        let g = [0, 1, 2];
        assert!(Partition::from_blocks(&g, &[vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(&g, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(&g, &[vec![0, 1, 2, 3]]).is_err());
        assert!(Partition::from_blocks(&[0, 0], &[vec![0]]).is_err());
    }

    #[test]
    fn lattice_operations() {
        let g = [0, 1, 2, 3];
        let a = p(&g, &[&[0, 1], &[2], &[3]]);
        let b = p(&g, &[&[1, 2], &[0], &[3]]);
        assert_eq!(a.meet(&b).unwrap(), p(&g, &[&[0, 1, 2], &[3]]));
        assert_eq!(a.lattice_join(&b).unwrap(), Partition::singletons(&g).unwrap());
        assert!(a.meet(&b).unwrap().coarsens(&a).unwrap());
        assert!(!a.coarsens(&b).unwrap());
        assert!(Partition::whole(&g).unwrap().coarsens(&a).unwrap());
    }

    #[test]
    fn restrict_and_lift() {
        let a = p(&[0, 1, 2, 3], &[&[0, 2], &[1, 3]]);
        assert_eq!(
            a.restrict_down(&[2, 3]).unwrap(),
            Partition::singletons(&[2, 3]).unwrap()
        );
        assert_eq!(a.restrict_down(&[0, 1, 2]).unwrap(), p(&[0, 1, 2], &[&[0, 2], &[1]]));
        let b = p(&[1, 3], &[&[1, 3]]);
        assert_eq!(
            b.lift_up(&[0, 1, 2, 3]).unwrap(),
            p(&[0, 1, 2, 3], &[&[1, 3], &[0], &[2]])
        );
        assert!(b.lift_up(&[1]).is_err());
        assert!(a.restrict_down(&[7]).is_err());
    }

    #[test]
    fn merged_with_small_sets_is_singletons() {
        let s = Partition::singletons(&[1, 2, 3]).unwrap();
        assert_eq!(Partition::merged(&[1, 2, 3], &[]).unwrap(), s);
        assert_eq!(Partition::merged(&[1, 2, 3], &[2]).unwrap(), s);
    }

    #[test]
    fn set_operations() {
        let g = [0, 1];
        let mut a = WeightedPartitionSet::new(&g).unwrap();
        a.insert(&Partition::whole(&g).unwrap(), 4).unwrap();
        a.insert(&Partition::whole(&g).unwrap(), 2).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.min_weight(), Some(2));

        let b = a.ins(&[5]).unwrap();
        assert_eq!(b.ground(), &[0, 1, 5]);
        assert_eq!(b.to_string(), "[0 1] [5] 2\n");
        assert!(a.ins(&[1]).is_err());

        let glued = b.glue(&[1, 5, 7]).unwrap();
        assert_eq!(glued.to_string(), "[0 1 5 7] 2\n");
        assert_eq!(b.glue_w(3, 0, 5).unwrap().to_string(), "[0 1 5] 5\n");
    }

    #[test]
    fn proj_needs_an_anchor() {
        let g = [0, 1, 2];
        let set = WeightedPartitionSet::from_entries(
            &g,
            [
                (p(&g, &[&[0, 1], &[2]]), 1),
                (p(&g, &[&[0], &[1, 2]]), 2),
                (p(&g, &[&[0], &[1], &[2]]), 3),
            ],
        )
        .unwrap();
        let out = set.proj(&[0]).unwrap();
        assert_eq!(out.to_string(), "[1] [2] 1\n");
        assert!(set.proj(&g).unwrap().is_empty());
        assert_eq!(set.proj(&[]).unwrap(), set);
    }

    #[test]
    fn join_combines_grounds() {
        let a = WeightedPartitionSet::from_entries(&[0, 1], [(p(&[0, 1], &[&[0, 1]]), 1)]).unwrap();
        let b = WeightedPartitionSet::from_entries(&[1, 2], [(p(&[1, 2], &[&[1, 2]]), 5)]).unwrap();
        assert_eq!(a.join(&b).unwrap().to_string(), "[0 1 2] 6\n");
        let empty = WeightedPartitionSet::new(&[1, 2]).unwrap();
        assert!(a.join(&empty).unwrap().is_empty());
    }

    #[test]
    fn opt_over_empty_ground() {
        let unit = WeightedPartitionSet::unit(&[], 7).unwrap();
        assert_eq!(unit.opt(&Partition::singletons(&[]).unwrap()).unwrap(), Some(7));
        assert_eq!(unit.reduce(), unit);
    }

    #[test]
    fn ground_guard() {
        let big: Vec<usize> = (0..17).collect();
        assert!(matches!(Partition::singletons(&big), Err(Error::Guard { .. })));
    }
}
