//! Z-score bucket mapping.
//!
//! A key `x` lands at position `((x - mean) / std + zmin) * scale`, floored
//! and clamped into `[0, k - 1]`. With `zmin = |(min - mean) / std|` the
//! segment minimum sits at position 0, and `scale = k / 4` spreads four
//! standard deviations over the `k` buckets.

use crate::error::SortError;
use crate::record::Record;
use crate::scalar::Scalar;
use crate::stats::FirstPassStats;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappingParams<F> {
    pub mean: F,
    pub std: F,
    pub zmin: F,
    pub scale: F,
    pub k: usize,
}

impl<F: Scalar> MappingParams<F> {
    /// Builds params around a given centre and spread; `min_key` anchors
    /// `zmin`. Fails if the spread is not a positive finite number.
    pub fn from_moments(mean: F, std: F, min_key: i64, k: usize) -> Result<Self, SortError> {
        if !std.is_finite() || std <= F::zero() || !mean.is_finite() {
            return Err(SortError::DegenerateSpread);
        }
        let k = k.max(2);
        let zmin = ((F::from_key(min_key) - mean) / std).abs();
        let scale = F::from_count(k) / F::from_count(4);
        Ok(MappingParams {
            mean,
            std,
            zmin,
            scale,
            k,
        })
    }

    /// Unfloored, unclamped bucket position of `key`.
    #[inline(always)]
    pub fn position(&self, key: F) -> F {
        ((key - self.mean) / self.std + self.zmin) * self.scale
    }

    /// Bucket of `key`, always in `[0, k - 1]`.
    #[inline(always)]
    pub fn bucket(&self, key: i64) -> usize {
        let h = self.position(F::from_key(key));
        if h >= F::zero() {
            let b = h.to_index();
            if b < self.k {
                b
            } else {
                self.k - 1
            }
        } else {
            // also catches NaN
            0
        }
    }

    /// Key value whose unfloored position is the midpoint `i + 0.5` of
    /// bucket `i`. Used as the centre for the bucket's own recursive split.
    #[inline]
    pub fn estimated_mean(&self, i: usize) -> F {
        let half = F::from_count(1) / F::from_count(2);
        ((F::from_count(i) + half) / self.scale - self.zmin) * self.std + self.mean
    }
}

/// Mean from the exact sum, then variance around it in a second sequential
/// pass.
pub fn build_mapping_params<F: Scalar, P>(
    segment: &[Record<P>],
    stats: &FirstPassStats,
    k: usize,
) -> Result<MappingParams<F>, SortError> {
    if segment.is_empty() {
        return Err(SortError::EmptySegment);
    }
    let n = segment.len();
    let divisor = n as i128;
    let mean = F::from_ratio(
        stats.sum.div_euclid(divisor),
        stats.sum.rem_euclid(divisor),
        n,
    );
    let mut var = F::zero();
    for r in segment {
        let d = F::from_key(r.key) - mean;
        var = var + d * d;
    }
    let std = (var / F::from_count(n)).sqrt();
    MappingParams::from_moments(mean, std, stats.min_key, k)
}

/// Free-function form of [`MappingParams::bucket`].
#[inline(always)]
pub fn map_to_cluster<F: Scalar>(key: i64, params: &MappingParams<F>) -> usize {
    params.bucket(key)
}

/// Free-function form of [`MappingParams::estimated_mean`].
#[inline]
pub fn estimated_mean<F: Scalar>(i: usize, params: &MappingParams<F>) -> F {
    params.estimated_mean(i)
}
