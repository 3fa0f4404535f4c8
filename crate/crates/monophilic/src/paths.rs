//! Closed-form coloring counts for paths and cycles, together with the two
//! list patterns on paths that realize the extremes.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::assignment::ListAssignment;
use crate::error::{Error, Result};

/// The two distinguished list patterns on a path with `k` edges. Interior
/// vertices always hold the full palette `{1..n}`; only the two end lists
/// differ, and both end lists have `n - 1` colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathListKind {
    /// Both ends carry the same list `{1..n-1}`.
    TypeA,
    /// The ends carry maximally overlapping distinct lists `{1..n-1}` and
    /// `{2..n}`.
    TypeB,
}

fn check_params(k: usize, n: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "path counts are indexed by edge count, which must be at least 1".into(),
        ));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(
            "path end lists have n - 1 colors, so n must be at least 2".into(),
        ));
    }
    Ok(())
}

fn sign(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Colorings of the `k`-edge path whose ends share one `(n-1)`-list:
/// `(n-1)/n * ((n-1)^(k+1) + (-1)^k)`.
///
/// The numerator is always divisible by `n` because `n - 1 ≡ -1 (mod n)`.
pub fn type_a_count(k: usize, n: u32) -> Result<BigUint> {
    check_params(k, n)?;
    let m = BigInt::from(n - 1);
    let num = &m * (m.pow(k as u32 + 1) + sign(k));
    let (q, r) = (num.clone() / n, num % n);
    debug_assert!(r.is_zero());
    let (s, digits) = q.into_parts();
    debug_assert_ne!(s, Sign::Minus);
    Ok(digits)
}

/// Colorings of the `k`-edge path whose ends carry distinct overlapping
/// `(n-1)`-lists: the same expression as [`type_a_count`] minus `(-1)^k`.
pub fn type_b_count(k: usize, n: u32) -> Result<BigUint> {
    check_params(k, n)?;
    let a = BigInt::from_biguint(Sign::Plus, type_a_count(k, n)?);
    let (s, digits) = (a - sign(k)).into_parts();
    debug_assert_ne!(s, Sign::Minus);
    Ok(digits)
}

/// Builds the list assignment of the given kind on the `k`-edge path
/// produced by [`crate::graph::build_path`] (vertices `0..=k` in path
/// order).
pub fn make_path_assignment(k: usize, n: u32, kind: PathListKind) -> Result<ListAssignment> {
    check_params(k, n)?;
    let low: Vec<u32> = (1..n).collect();
    let high: Vec<u32> = (2..=n).collect();
    let full: Vec<u32> = (1..=n).collect();
    let mut lists = vec![full; k + 1];
    lists[0] = low.clone();
    lists[k] = match kind {
        PathListKind::TypeA => low,
        PathListKind::TypeB => high,
    };
    ListAssignment::new(lists)
}

/// Colorings of the `k`-cycle from the palette `{1..n}`:
/// `(n-1)^k + (-1)^k (n-1)`.
pub fn cycle_uniform_count(k: usize, n: u32) -> Result<BigUint> {
    if k < 3 {
        return Err(Error::InvalidParameter(
            "cycles need at least 3 vertices".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "palette size must be at least 1".into(),
        ));
    }
    let m = BigInt::from(n - 1);
    let (s, digits) = (m.pow(k as u32) + sign(k) * m).into_parts();
    debug_assert_ne!(s, Sign::Minus);
    Ok(digits)
}
