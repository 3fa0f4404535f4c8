//! Bitmask coloring counter for the search inner loops.
//!
//! Graphs are given as per-vertex neighbor masks (at most 64 vertices) and
//! lists as color masks (at most 64 colors). Counts saturate at `cap + 1`,
//! which lets callers abort branches as soon as a bound is exceeded while
//! staying exact below it.

use smallvec::SmallVec;

/// Exact number of proper list colorings if it is at most `cap`, otherwise
/// `cap + 1`.
pub(crate) fn count_colorings(adj: &[u64], lists: &[u64], cap: u128) -> u128 {
    debug_assert!(adj.len() <= 64);
    debug_assert_eq!(adj.len(), lists.len());
    let n = adj.len();
    if n == 0 {
        return 1.min(cap.saturating_add(1));
    }
    let active = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut ls: SmallVec<[u64; 16]> = SmallVec::from_slice(lists);
    rec(adj, &mut ls, active, cap.saturating_add(1))
}

/// Counts colorings of `active`, clamped to `limit` (= cap + 1).
fn rec(adj: &[u64], ls: &mut SmallVec<[u64; 16]>, mut active: u64, limit: u128) -> u128 {
    let mut factor: u128 = 1;
    // Vertices with no active neighbor contribute a plain factor.
    let mut scan = active;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        if adj[v] & active & !(1u64 << v) == 0 {
            let choices = ls[v].count_ones() as u128;
            if choices == 0 {
                return 0;
            }
            factor = factor.saturating_mul(choices).min(limit);
            active &= !(1u64 << v);
        }
    }
    if active == 0 {
        return factor;
    }
    // Branch on the most constrained remaining vertex.
    let mut v = usize::MAX;
    let mut best = u32::MAX;
    let mut scan = active;
    while scan != 0 {
        let w = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let size = ls[w].count_ones();
        if size < best {
            best = size;
            v = w;
        }
    }
    if best == 0 {
        return 0;
    }
    let rest = active & !(1u64 << v);
    let mut total: u128 = 0;
    let mut avail = ls[v];
    while avail != 0 {
        let cbit = avail & avail.wrapping_neg();
        avail &= avail - 1;
        let mut touched: u64 = 0;
        let mut nbrs = adj[v] & rest;
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if ls[w] & cbit != 0 {
                ls[w] &= !cbit;
                touched |= 1u64 << w;
            }
        }
        total = total.saturating_add(rec(adj, ls, rest, limit)).min(limit);
        let mut undo = touched;
        while undo != 0 {
            let w = undo.trailing_zeros() as usize;
            undo &= undo - 1;
            ls[w] |= cbit;
        }
        if total >= limit {
            return limit;
        }
    }
    factor.saturating_mul(total).min(limit)
}
