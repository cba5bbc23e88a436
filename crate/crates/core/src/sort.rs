//! The zsort driver.
//!
//! Records are scattered into buckets by z-score position, then every bucket
//! is finished independently: insertion sort when small, counting sort when
//! its key range is narrow, otherwise another scatter around the bucket's
//! estimated mean. The bucket count is fixed from the top-level size.
//!
//! Two equally sized buffers are used. Each scatter moves a segment from the
//! buffer it sits in into the same index range of the other, so the two
//! alternate roles level by level and every move reads its source front to
//! back.

use crate::config::{SortConfig, SortStats};
use crate::mapping::{build_mapping_params, MappingParams};
use crate::merge::{fallback_sort_stable, merge_sort_stable, merge_sort_with_buffer};
use crate::partition::{build_partition_plan, stable_scatter, PartitionPlan};
use crate::record::Record;
use crate::scalar::Scalar;
use crate::small::{counting_sort_with, insertion_sort_in_place};
use crate::stats::{all_equal, first_pass};

/// Stable sort by key using `f64` mapping arithmetic.
pub fn zsort<P: Copy>(records: &[Record<P>], config: &SortConfig) -> (Vec<Record<P>>, SortStats) {
    zsort_with::<f64, P>(records, config)
}

/// Stable sort by key with the bucket arithmetic evaluated in `F`.
pub fn zsort_with<F: Scalar, P: Copy>(
    records: &[Record<P>],
    config: &SortConfig,
) -> (Vec<Record<P>>, SortStats) {
    let n = records.len();
    let mut run = Run::<F>::new(config, config.bucket_count(n));
    let out = run.top_level(records);
    (out, run.finish())
}

/// Sorts a segment below the top level, centred on `mean_est` instead of a
/// freshly computed mean. The result lands in `dst`; `src` is clobbered.
///
/// `k` is the top-level bucket count and `depth` the level this call
/// represents (the top-level scatter is level 1).
pub fn zsort_rec<F: Scalar, P: Copy>(
    src: &mut [Record<P>],
    dst: &mut [Record<P>],
    k: usize,
    mean_est: F,
    depth: usize,
    config: &SortConfig,
    stats: &mut SortStats,
) {
    assert_eq!(src.len(), dst.len(), "zsort_rec buffers differ in length");
    let mut run = Run::<F>::new(config, k);
    run.stats = *stats;
    if src.len() <= config.insertion_threshold {
        run.stats.insertion_sort_invocations += 1;
        dst.copy_from_slice(src);
        insertion_sort_in_place(dst);
    } else {
        run.recurse(src, dst, true, mean_est, depth.max(1));
    }
    *stats = run.finish();
}

struct Run<'c, F> {
    config: &'c SortConfig,
    k: usize,
    stats: SortStats,
    hist: Vec<usize>,
    _scalar: std::marker::PhantomData<F>,
}

impl<'c, F: Scalar> Run<'c, F> {
    fn new(config: &'c SortConfig, k: usize) -> Self {
        Run {
            config,
            k: k.max(2),
            stats: SortStats::default(),
            hist: Vec::new(),
            _scalar: std::marker::PhantomData,
        }
    }

    fn finish(self) -> SortStats {
        if self.config.collect_stats {
            self.stats
        } else {
            SortStats::default()
        }
    }

    fn top_level<P: Copy>(&mut self, records: &[Record<P>]) -> Vec<Record<P>> {
        let n = records.len();
        let Some(&first) = records.first() else {
            return Vec::new();
        };
        if n <= self.config.insertion_threshold {
            self.stats.insertion_sort_invocations += 1;
            let mut out = records.to_vec();
            insertion_sort_in_place(&mut out);
            return out;
        }

        let fp = first_pass(records).expect("segment is nonempty");
        if all_equal(&fp, n) {
            return records.to_vec();
        }
        let range = fp.range();
        if range < self.config.counting_range_threshold as i128 {
            self.stats.counting_sort_invocations += 1;
            let mut out = vec![first; n];
            counting_sort_with(
                records,
                fp.min_key,
                range as usize + 1,
                &mut out,
                &mut self.hist,
            );
            return out;
        }

        let params = match build_mapping_params::<F, P>(records, &fp, self.k) {
            Ok(p) => p,
            Err(_) => return self.top_level_fallback(records),
        };
        let plan = build_partition_plan(records, &params);
        if plan.is_stalled() {
            return self.top_level_fallback(records);
        }

        let mut scratch = vec![first; n];
        stable_scatter(records, &plan, &params, &mut scratch);
        self.note_scatter(1, n);

        let mut out = vec![first; n];
        self.dispatch(&mut scratch, &mut out, true, &plan, &params, 1);
        out
    }

    fn top_level_fallback<P: Copy>(&mut self, records: &[Record<P>]) -> Vec<Record<P>> {
        self.stats.fallback_invocations += 1;
        merge_sort_stable(records)
    }

    /// Finishes every bucket of a scattered segment. The records sit in
    /// `data`; the sorted result must end in `other` when `into_other`,
    /// else in `data`.
    fn dispatch<P: Copy>(
        &mut self,
        data: &mut [Record<P>],
        other: &mut [Record<P>],
        into_other: bool,
        plan: &PartitionPlan,
        params: &MappingParams<F>,
        depth: usize,
    ) {
        let threshold = self.config.insertion_threshold;
        for b in 0..plan.k() {
            let count = plan.counts[b];
            if count == 0 {
                continue;
            }
            let range = plan.bucket_range(b);
            let seg = &mut data[range.clone()];
            let alt = &mut other[range];
            if count > threshold {
                let mean_est = params.estimated_mean(b);
                self.recurse(seg, alt, into_other, mean_est, depth + 1);
            } else {
                self.stats.insertion_sort_invocations += 1;
                if into_other {
                    alt.copy_from_slice(seg);
                    insertion_sort_in_place(alt);
                } else {
                    insertion_sort_in_place(seg);
                }
            }
        }
    }

    fn recurse<P: Copy>(
        &mut self,
        data: &mut [Record<P>],
        other: &mut [Record<P>],
        into_other: bool,
        mean_est: F,
        depth: usize,
    ) {
        self.stats.max_depth_reached = self.stats.max_depth_reached.max(depth);
        if depth >= self.config.depth_guard {
            self.fallback(data, other, into_other);
            return;
        }

        let n = data.len();
        let mut min_key = data[0].key;
        let mut max_key = data[0].key;
        let mut sq = F::zero();
        for r in data.iter() {
            let k = r.key;
            min_key = min_key.min(k);
            max_key = max_key.max(k);
            let d = F::from_key(k) - mean_est;
            sq = sq + d * d;
        }

        if min_key == max_key {
            if into_other {
                other.copy_from_slice(data);
            }
            return;
        }
        let range = max_key as i128 - min_key as i128;
        if range < self.config.counting_range_threshold as i128 {
            self.stats.counting_sort_invocations += 1;
            counting_sort_with(data, min_key, range as usize + 1, other, &mut self.hist);
            if !into_other {
                data.copy_from_slice(other);
            }
            return;
        }

        let std = (sq / F::from_count(n)).sqrt();
        let params = match MappingParams::from_moments(mean_est, std, min_key, self.k) {
            Ok(p) => p,
            Err(_) => return self.fallback(data, other, into_other),
        };
        let plan = build_partition_plan(data, &params);
        if plan.is_stalled() {
            return self.fallback(data, other, into_other);
        }
        stable_scatter(data, &plan, &params, other);
        self.note_scatter(depth, n);
        self.dispatch(other, data, !into_other, &plan, &params, depth);
    }

    fn fallback<P: Copy>(
        &mut self,
        data: &mut [Record<P>],
        other: &mut [Record<P>],
        into_other: bool,
    ) {
        self.stats.fallback_invocations += 1;
        if into_other {
            fallback_sort_stable(data, other);
        } else {
            merge_sort_with_buffer(data, other);
        }
    }

    fn note_scatter(&mut self, depth: usize, n: usize) {
        self.stats.max_depth_reached = self.stats.max_depth_reached.max(depth);
        self.stats.total_scatter_passes += 1;
        self.stats.scattered_records += n;
    }
}
