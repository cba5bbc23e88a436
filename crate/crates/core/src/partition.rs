//! Histogram, exclusive prefix offsets and the stable scatter.

use crate::mapping::MappingParams;
use crate::record::Record;
use crate::scalar::Scalar;

/// Bucket occupancy and start offsets for one scatter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPlan {
    pub counts: Vec<usize>,
    pub offsets: Vec<usize>,
}

impl PartitionPlan {
    pub fn k(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Index range of bucket `b` in the scattered output.
    #[inline]
    pub fn bucket_range(&self, b: usize) -> std::ops::Range<usize> {
        self.offsets[b]..self.offsets[b] + self.counts[b]
    }

    /// True if a single bucket received every record, i.e. the scatter would
    /// not split the segment.
    pub fn is_stalled(&self) -> bool {
        let total = self.total();
        total > 0 && self.counts.contains(&total)
    }
}

pub fn build_partition_plan<F: Scalar, P>(
    segment: &[Record<P>],
    params: &MappingParams<F>,
) -> PartitionPlan {
    let k = params.k;
    let mut counts = vec![0usize; k];
    for r in segment {
        counts[params.bucket(r.key)] += 1;
    }
    let mut offsets = Vec::with_capacity(k);
    let mut running = 0;
    for &c in &counts {
        offsets.push(running);
        running += c;
    }
    PartitionPlan { counts, offsets }
}

/// Moves `src` into `dst` grouped by bucket. `src` is read front to back and
/// each record goes to the next free slot of its bucket, so equal keys keep
/// their relative order.
///
/// # Panics
/// If `dst.len() != src.len()` or the plan does not describe `src`.
pub fn stable_scatter<F: Scalar, P: Copy>(
    src: &[Record<P>],
    plan: &PartitionPlan,
    params: &MappingParams<F>,
    dst: &mut [Record<P>],
) {
    assert_eq!(src.len(), dst.len(), "scatter destination size mismatch");
    let mut cursor = plan.offsets.clone();
    for r in src {
        let b = params.bucket(r.key);
        dst[cursor[b]] = *r;
        cursor[b] += 1;
    }
}
