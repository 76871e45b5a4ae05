//! Rank-based reduction of weighted partition sets.
//!
//! Row `p` of the cut matrix has a one in column `(V1, V2)` when every block
//! of `p` lies entirely on one side. The ground's smallest element is pinned
//! to `V1`, so there are `2^(k-1)` columns. Scanning rows by increasing
//! weight and keeping the ones that are linearly independent over GF(2)
//! leaves a representative subset.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use super::code;
use super::Weight;

static CALLS: AtomicU64 = AtomicU64::new(0);
static OVER_BOUND: AtomicU64 = AtomicU64::new(0);

/// Process-wide tallies of `reduce` calls and of outputs that exceeded
/// `2^k` entries (the latter should always be zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceCounters {
    pub calls: u64,
    pub over_bound: u64,
}

pub fn reduce_counters() -> ReduceCounters {
    ReduceCounters {
        calls: CALLS.load(Ordering::Relaxed),
        over_bound: OVER_BOUND.load(Ordering::Relaxed),
    }
}

/// Cut columns of one row, as a bitset over `2^(k-1)` columns.
fn row_bits(c: u64, k: usize, words: usize) -> Vec<u64> {
    let mut row = vec![0u64; words];
    // element masks of every block except the one holding element 0,
    // shifted so that element i >= 1 is bit i - 1 of the column index
    let mut masks: Vec<u32> = Vec::new();
    let mut slot = [usize::MAX; 16];
    for i in 1..k {
        let m = code::get(c, i);
        if m == 0 {
            continue;
        }
        if slot[m] == usize::MAX {
            slot[m] = masks.len();
            masks.push(0);
        }
        masks[slot[m]] |= 1 << (i - 1);
    }
    for subset in 0u32..1 << masks.len() {
        let mut col = 0u32;
        for (b, &mask) in masks.iter().enumerate() {
            if subset >> b & 1 == 1 {
                col |= mask;
            }
        }
        row[col as usize / 64] |= 1 << (col % 64);
    }
    row
}

pub(super) fn reduce(k: usize, entries: &BTreeMap<u64, Weight>) -> BTreeMap<u64, Weight> {
    CALLS.fetch_add(1, Ordering::Relaxed);
    if k == 0 || entries.len() <= 1 {
        return entries.clone();
    }
    let columns = 1usize << (k - 1);
    let words = columns.div_ceil(64);

    let mut rows: Vec<(Weight, u64)> = entries.iter().map(|(&c, &w)| (w, c)).collect();
    rows.sort_unstable();

    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut kept = BTreeMap::new();
    for (w, c) in rows {
        if basis.len() == columns {
            break;
        }
        let mut row = row_bits(c, k, words);
        for (pivot, b) in &basis {
            if row[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (x, y) in row.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        if let Some(word) = row.iter().position(|&x| x != 0) {
            let pivot = word * 64 + row[word].trailing_zeros() as usize;
            basis.push((pivot, row));
            kept.insert(c, w);
        }
    }
    if kept.len() > 1 << k {
        OVER_BOUND.fetch_add(1, Ordering::Relaxed);
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_marks_block_respecting_cuts() {
        // ground of 3, blocks {0,1} {2}: consistent cuts are V2 = {} and V2 = {2}
        let c = code::from_labels(&[0, 0, 1]);
        let row = row_bits(c, 3, 1);
        assert_eq!(row[0], 0b0001 | 0b0100);
        // one block: only the trivial cut
        assert_eq!(row_bits(0, 3, 1)[0], 1);
    }

    #[test]
    fn drops_dependent_heavier_row() {
        // rows over {0,1,2}: singletons 1111, {0,1}{2} 0101, {0,2}{1} 0011 and
        // {1,2}{0} 1001, the last being the xor of the first three
        let mut entries = BTreeMap::new();
        entries.insert(code::singletons(3), 1);
        entries.insert(code::from_labels(&[0, 0, 1]), 2);
        entries.insert(code::from_labels(&[0, 1, 0]), 3);
        entries.insert(code::from_labels(&[0, 1, 1]), 4);
        let out = reduce(3, &entries);
        assert_eq!(out.len(), 3);
        assert!(!out.contains_key(&code::from_labels(&[0, 1, 1])));
    }
}
