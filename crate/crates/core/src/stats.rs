//! Single-pass key statistics.

use crate::error::SortError;
use crate::record::Record;

/// Exact sum and extrema of a segment's keys.
///
/// `i128` holds any sum of up to 2^64 keys of magnitude 2^63 without overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FirstPassStats {
    pub sum: i128,
    pub min_key: i64,
    pub max_key: i64,
}

impl FirstPassStats {
    /// `max_key - min_key` computed without overflow.
    #[inline]
    pub fn range(&self) -> i128 {
        self.max_key as i128 - self.min_key as i128
    }
}

/// One sequential pass collecting the exact key sum, minimum and maximum.
pub fn first_pass<P>(segment: &[Record<P>]) -> Result<FirstPassStats, SortError> {
    let (first, rest) = segment.split_first().ok_or(SortError::EmptySegment)?;
    let mut sum = first.key as i128;
    let mut min_key = first.key;
    let mut max_key = first.key;
    for r in rest {
        let k = r.key;
        sum += k as i128;
        min_key = min_key.min(k);
        max_key = max_key.max(k);
    }
    Ok(FirstPassStats {
        sum,
        min_key,
        max_key,
    })
}

/// True iff every key in the segment equals the minimum.
///
/// Every key is at least `min`, so `sum == min * size` forces equality. The
/// test runs in exact integer arithmetic.
#[inline]
pub fn all_equal(stats: &FirstPassStats, size: usize) -> bool {
    stats.sum == stats.min_key as i128 * size as i128
}
