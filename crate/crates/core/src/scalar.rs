//! Floating-point scalar used for the z-score mapping arithmetic.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};

/// Real type the mapping statistics (mean, spread, bucket position) are
/// evaluated in. Keys stay `i64`; only the bucket arithmetic is generic.
///
/// Every conversion and arithmetic step used by the mapping is monotone
/// nondecreasing under round-to-nearest, so bucket order follows key order
/// for any implementor.
pub trait Scalar: Float + FromPrimitive + Debug + Default + Send + Sync + 'static {
    fn from_key(key: i64) -> Self;

    fn from_count(n: usize) -> Self;

    /// Exact integer quotient/remainder pair folded into one real:
    /// `quot + rem / divisor`.
    fn from_ratio(quot: i128, rem: i128, divisor: usize) -> Self;

    /// Truncates a finite value already known to lie in `[0, usize::MAX)`.
    fn to_index(self) -> usize;
}

macro_rules! impl_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            #[inline(always)]
            fn from_key(key: i64) -> Self {
                key as $f
            }

            #[inline(always)]
            fn from_count(n: usize) -> Self {
                n as $f
            }

            #[inline]
            fn from_ratio(quot: i128, rem: i128, divisor: usize) -> Self {
                quot as $f + rem as $f / divisor as $f
            }

            #[inline(always)]
            fn to_index(self) -> usize {
                self as usize
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_keeps_precision_of_huge_sums() {
        // sum = 3 * (2^62 + 1), n = 3 -> mean 2^62 + 1
        let sum: i128 = 3 * ((1i128 << 62) + 1);
        let (q, r) = (sum.div_euclid(3), sum.rem_euclid(3));
        assert_eq!(f64::from_ratio(q, r, 3), ((1u64 << 62) + 1) as f64);
        let neg: i128 = -7;
        let (q, r) = (neg.div_euclid(2), neg.rem_euclid(2));
        assert_eq!(f64::from_ratio(q, r, 2), -3.5);
        assert_eq!(f32::from_ratio(q, r, 2), -3.5f32);
    }

    #[test]
    fn key_conversion_is_monotone_at_extremes() {
        assert!(f64::from_key(i64::MIN) < f64::from_key(0));
        assert!(f64::from_key(i64::MAX - 1) <= f64::from_key(i64::MAX));
        assert!(f32::from_key(i64::MAX - 1) <= f32::from_key(i64::MAX));
    }
}
