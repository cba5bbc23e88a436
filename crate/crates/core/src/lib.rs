//! Stable distribution sort for 64-bit signed integer keys.
//!
//! Keys are bucketed by their z-score: `((x - mean) / std + zmin) * scale`,
//! floored and clamped to `[0, k - 1]`, where `zmin` shifts the segment
//! minimum to zero and `k = max(2, round(alpha * sqrt(n)))` stays fixed for
//! the whole sort. A histogram pass sizes the buckets so one stable scatter
//! lays them out contiguously, and each bucket is then finished on its own:
//!
//! * at most `insertion_threshold` records: insertion sort,
//! * key range below `counting_range_threshold`: counting sort,
//! * all keys equal: already sorted,
//! * otherwise: scatter again around the key that maps to the bucket's
//!   midpoint, which spares recomputing the mean.
//!
//! A bucket that would swallow its whole segment, or a recursion reaching
//! `depth_guard`, falls back to a stable merge sort, so every input
//! terminates.
//!
//! ```
//! use zsort::{zsort, Record, SortConfig};
//!
//! let input = vec![Record::new(3, 'a'), Record::new(1, 'b'), Record::new(3, 'c')];
//! let (sorted, _stats) = zsort(&input, &SortConfig::default());
//! assert_eq!(sorted, vec![Record::new(1, 'b'), Record::new(3, 'a'), Record::new(3, 'c')]);
//! ```
//!
//! The mapping arithmetic is generic over [`Scalar`] (`f32` or `f64`); the
//! crate-root aliases name the common instantiations.

pub mod config;
pub mod error;
pub mod mapping;
pub mod merge;
pub mod partition;
pub mod record;
pub mod scalar;
pub mod small;
pub mod sort;
pub mod stats;

pub use config::{SortConfig, SortStats};
pub use error::SortError;
pub use mapping::{build_mapping_params, estimated_mean, map_to_cluster, MappingParams};
pub use merge::{fallback_sort_stable, merge_sort_stable, merge_sort_with_buffer};
pub use partition::{build_partition_plan, stable_scatter, PartitionPlan};
pub use record::{keys_of, sequenced, Record};
pub use scalar::Scalar;
pub use small::{counting_sort_stable, insertion_sort_in_place, insertion_sort_stable};
pub use sort::{zsort, zsort_rec, zsort_with};
pub use stats::{all_equal, first_pass, FirstPassStats};

/// Mapping parameters in double precision, the default for [`zsort`].
pub type MappingParamsF64 = MappingParams<f64>;
/// Mapping parameters in single precision.
pub type MappingParamsF32 = MappingParams<f32>;
/// Records carrying a `u64` sequence number.
pub type SeqRecord = Record<u64>;
