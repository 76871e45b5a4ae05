//! Per-bag keys packed four bits per bag position into a `u64`, plus
//! bitsets over bag positions and over pairs of bag positions.

const MASK: u64 = 0xF;

#[inline]
pub(crate) fn get(key: u64, i: usize) -> u8 {
    (key >> (4 * i) & MASK) as u8
}

#[inline]
pub(crate) fn set(key: u64, i: usize, val: u8) -> u64 {
    key & !(MASK << (4 * i)) | (val as u64) << (4 * i)
}

#[inline]
fn low(p: usize, width: u32) -> u64 {
    let bits = width as usize * p;
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Inserts `val` at position `p`, shifting later positions up.
pub(crate) fn insert(key: u64, p: usize, val: u8) -> u64 {
    let lo = key & low(p, 4);
    let hi = (key & !low(p, 4)).checked_shl(4).unwrap_or(0);
    hi | (val as u64) << (4 * p) | lo
}

/// Removes position `p`, shifting later positions down.
pub(crate) fn remove(key: u64, p: usize) -> u64 {
    let lo = key & low(p, 4);
    let hi = key >> 4 & !low(p, 4);
    hi | lo
}

/// Positions whose label satisfies `pred`, as a bitmask.
pub(crate) fn positions(key: u64, len: usize, pred: impl Fn(u8) -> bool) -> u32 {
    (0..len).filter(|&i| pred(get(key, i))).fold(0, |m, i| m | 1 << i)
}

#[inline]
pub(crate) fn insert_bit(mask: u32, p: usize, bit: bool) -> u32 {
    let lo = mask & ((1u32 << p) - 1);
    let hi = (mask & !((1u32 << p) - 1)) << 1;
    hi | (bit as u32) << p | lo
}

#[inline]
pub(crate) fn remove_bit(mask: u32, p: usize) -> u32 {
    let lo = mask & ((1u32 << p) - 1);
    let hi = (mask >> 1) & !((1u32 << p) - 1);
    hi | lo
}

/// Index of the unordered pair `{i, j}`, `i != j`, among bag positions.
#[inline]
pub(crate) fn pair(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

fn unpair(k: usize) -> (usize, usize) {
    let mut b = 1;
    while (b + 1) * b / 2 <= k {
        b += 1;
    }
    (k - b * (b - 1) / 2, b)
}

fn map_pairs(set: u128, f: impl Fn(usize) -> Option<usize>) -> u128 {
    let mut out = 0u128;
    let mut rest = set;
    while rest != 0 {
        let k = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (a, b) = unpair(k);
        if let (Some(a), Some(b)) = (f(a), f(b)) {
            out |= 1 << pair(a, b);
        }
    }
    out
}

/// Renumbers a pair set after inserting a new position at `p`.
pub(crate) fn pairs_insert(set: u128, p: usize) -> u128 {
    map_pairs(set, |i| Some(if i >= p { i + 1 } else { i }))
}

/// Renumbers a pair set after removing position `p`, dropping pairs through it.
pub(crate) fn pairs_remove(set: u128, p: usize) -> u128 {
    map_pairs(set, |i| match i.cmp(&p) {
        std::cmp::Ordering::Less => Some(i),
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some(i - 1),
    })
}
