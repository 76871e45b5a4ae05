//! Exhaustive reference algorithms. Everything here is exponential and
//! guarded by hard size limits; exceeding one is an error, never a silent
//! truncation.

mod minor;
mod tm;

use crate::error::{Error, Result};
use crate::graph::{is_free, Graph, PatternId};
use crate::par::{self, Exec};

pub use minor::{contains_minor, MinorModel};
pub use tm::{contains_tm, TmModel};

/// Largest pattern accepted by the minor and topological-minor searches.
pub const MAX_PATTERN: usize = 6;
/// Largest host accepted by the minor and topological-minor searches.
pub const MAX_HOST: usize = 12;
/// Largest graph accepted by [`min_deletion_bruteforce`].
pub const MAX_BRUTEFORCE: usize = 15;

pub(crate) fn guard(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        return Err(Error::Guard { what, actual, limit });
    }
    Ok(())
}

/// Pattern freeness decided by topological-minor search rather than by the
/// structural characterization.
pub fn is_free_generic(g: &Graph, pattern: PatternId) -> Result<bool> {
    Ok(contains_tm(g, &pattern.graph())?.is_none())
}

/// A smallest vertex set whose deletion makes `g` `pattern`-free, found by
/// trying subsets in order of size. Freeness of each candidate uses the
/// structural check.
pub fn min_deletion_bruteforce(g: &Graph, pattern: PatternId, exec: Exec) -> Result<Vec<usize>> {
    guard("vertex count for brute-force deletion", g.n(), MAX_BRUTEFORCE)?;
    let n = g.n();
    for size in 0..=n {
        let subsets = subsets_of_size(n, size);
        let hit = par::position(exec, &subsets, |&mask| {
            let deleted: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            is_free(&g.without(&deleted), pattern)
        });
        if let Some(i) = hit {
            let mask = subsets[i];
            return Ok((0..n).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    unreachable!("deleting every vertex leaves the empty graph, which is free")
}

/// All `size`-subsets of `0..n` as bitmasks, in increasing numeric order.
fn subsets_of_size(n: usize, size: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == size).collect()
}
