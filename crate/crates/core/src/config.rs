use crate::error::SortError;

/// Tuning knobs for [`zsort`](crate::zsort).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SortConfig {
    /// Bucket-count multiplier: `k = max(2, round(alpha * sqrt(n)))`.
    pub alpha: f64,
    /// Segments of at most this many records are insertion sorted.
    pub insertion_threshold: usize,
    /// Segments whose key range `max - min` is strictly below this are
    /// counting sorted.
    pub counting_range_threshold: usize,
    /// Recursion level at which partitioning gives up and merge sorts.
    pub depth_guard: usize,
    /// Fill in [`SortStats`]; when off the returned stats stay zeroed.
    pub collect_stats: bool,
}

impl Default for SortConfig {
    fn default() -> Self {
        SortConfig {
            alpha: 0.6,
            insertion_threshold: 96,
            counting_range_threshold: 65_000,
            depth_guard: 32,
            collect_stats: false,
        }
    }
}

impl SortConfig {
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_stats(mut self) -> Self {
        self.collect_stats = true;
        self
    }

    pub fn validate(&self) -> Result<(), SortError> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(SortError::InvalidConfig(
                "alpha must be positive and finite",
            ));
        }
        if self.insertion_threshold < 1 {
            return Err(SortError::InvalidConfig(
                "insertion_threshold must be at least 1",
            ));
        }
        if self.counting_range_threshold < 1 {
            return Err(SortError::InvalidConfig(
                "counting_range_threshold must be at least 1",
            ));
        }
        if self.depth_guard < 3 {
            return Err(SortError::InvalidConfig("depth_guard must be at least 3"));
        }
        Ok(())
    }

    /// Bucket count for a top-level problem of `n` records. It is held fixed
    /// for every recursive call below that problem.
    pub fn bucket_count(&self, n: usize) -> usize {
        let k = (self.alpha * (n as f64).sqrt()).round();
        if k.is_finite() && k >= 2.0 {
            k as usize
        } else {
            2
        }
    }
}

/// Instrumentation gathered by one sort.
///
/// Depth counts partitioning levels: 0 when no scatter ever ran, 1 for the
/// top-level scatter, one more for each nested recursive call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SortStats {
    pub max_depth_reached: usize,
    pub fallback_invocations: usize,
    pub counting_sort_invocations: usize,
    pub insertion_sort_invocations: usize,
    /// Number of stable scatter passes run, across all levels.
    pub total_scatter_passes: usize,
    /// Records moved by those scatters; divided by `n` this is the number of
    /// full-array distribution passes.
    pub scattered_records: usize,
}

impl SortStats {
    /// Scatter work normalised to full passes over an input of `n` records.
    pub fn normalized_scatter_passes(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.scattered_records as f64 / n as f64
        }
    }
}
