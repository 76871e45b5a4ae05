//! Packed partition codes: 4 bits per element holding the position of the
//! smallest element in its block.

#[inline]
pub(crate) fn get(code: u64, i: usize) -> usize {
    (code >> (4 * i) & 0xF) as usize
}

#[inline]
fn with(code: u64, i: usize, v: usize) -> u64 {
    code & !(0xF << (4 * i)) | (v as u64) << (4 * i)
}

pub(crate) fn singletons(k: usize) -> u64 {
    (0..k).fold(0, |c, i| with(c, i, i))
}

/// Canonical code for arbitrary block labels.
pub(crate) fn from_labels(labels: &[u8]) -> u64 {
    let mut first = [u8::MAX; 256];
    let mut code = 0;
    for (i, &l) in labels.iter().enumerate() {
        if first[l as usize] == u8::MAX {
            first[l as usize] = i as u8;
        }
        code = with(code, i, first[l as usize] as usize);
    }
    code
}

pub(crate) fn block_count(code: u64, k: usize) -> usize {
    (0..k).filter(|&i| get(code, i) == i).count()
}

pub(crate) fn blocks(code: u64, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut slot = [usize::MAX; 16];
    for i in 0..k {
        let m = get(code, i);
        if slot[m] == usize::MAX {
            slot[m] = out.len();
            out.push(Vec::new());
        }
        out[slot[m]].push(i);
    }
    out
}

fn find(parent: &mut [u8; 16], mut x: usize) -> usize {
    while parent[x] as usize != x {
        parent[x] = parent[parent[x] as usize];
        x = parent[x] as usize;
    }
    x
}

fn union(parent: &mut [u8; 16], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo as u8;
    }
}

fn from_parent(parent: &mut [u8; 16], k: usize) -> u64 {
    // roots are always block minima because unions link the larger root below the smaller
    (0..k).fold(0, |c, i| with(c, i, find(parent, i)))
}

/// Transitive merge.
pub(crate) fn meet(a: u64, b: u64, k: usize) -> u64 {
    let mut parent = [0u8; 16];
    for (i, p) in parent.iter_mut().enumerate().take(k) {
        *p = i as u8;
    }
    for i in 0..k {
        union(&mut parent, i, get(a, i));
        union(&mut parent, i, get(b, i));
    }
    from_parent(&mut parent, k)
}

/// Blockwise intersection.
pub(crate) fn intersect(a: u64, b: u64, k: usize) -> u64 {
    let mut code = 0;
    for i in 0..k {
        let m = (0..=i)
            .find(|&j| get(a, j) == get(a, i) && get(b, j) == get(b, i))
            .unwrap_or(i);
        code = with(code, i, m);
    }
    code
}

/// Merges the blocks of all elements at `pos` into one.
pub(crate) fn merge_positions(code: u64, k: usize, pos: &[usize]) -> u64 {
    if pos.len() < 2 {
        return code;
    }
    let mut parent = [0u8; 16];
    for (i, slot) in parent.iter_mut().enumerate().take(k) {
        *slot = get(code, i) as u8;
    }
    for w in pos.windows(2) {
        union(&mut parent, w[0], w[1]);
    }
    from_parent(&mut parent, k)
}

/// Restriction to the (increasing) positions in `keep`.
pub(crate) fn restrict(code: u64, keep: &[usize]) -> u64 {
    let mut labels = [0u8; 16];
    for (t, &i) in keep.iter().enumerate() {
        labels[t] = get(code, i) as u8;
    }
    from_labels(&labels[..keep.len()])
}

/// Embeds a code over `k` elements into a ground of `new_k` elements, old
/// position `i` moving to the increasing position `map[i]`.
pub(crate) fn lift(code: u64, k: usize, map: &[usize], new_k: usize) -> u64 {
    let mut out = singletons(new_k);
    for i in 0..k {
        out = with(out, map[i], map[get(code, i)]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_to_code() {
        // blocks {0,2} {1} {3,4}
        let c = from_labels(&[7, 3, 7, 1, 1]);
        assert_eq!((0..5).map(|i| get(c, i)).collect::<Vec<_>>(), vec![0, 1, 0, 3, 3]);
        assert_eq!(block_count(c, 5), 3);
        assert_eq!(blocks(c, 5), vec![vec![0, 2], vec![1], vec![3, 4]]);
    }

    #[test]
    fn meet_chains_through_both() {
        let a = from_labels(&[0, 0, 1, 2]);
        let b = from_labels(&[0, 1, 1, 2]);
        assert_eq!(meet(a, b, 4), from_labels(&[0, 0, 0, 1]));
        assert_eq!(intersect(a, b, 4), singletons(4));
    }

    #[test]
    fn merge_positions_keeps_minimum() {
        let c = merge_positions(singletons(4), 4, &[3, 1]);
        assert_eq!(c, from_labels(&[0, 1, 2, 1]));
    }
}
