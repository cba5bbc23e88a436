//! Cold-cache benchmark harness.
//!
//! A trial generates its input once, then per repetition copies it, flushes
//! the caches by sweeping a large buffer, times only the sort call, and
//! verifies the output. A trial whose output fails verification yields an
//! error instead of timings.

use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use zsort::{merge_sort_stable, Record, SortConfig};

use crate::datagen::{generate, DistributionKind, DistributionSpec};
use crate::error::{HarnessError, Result};
use crate::radix::lsd_radix_sort_stable;
use crate::verify::check_stable_permutation;

pub const DEFAULT_REPETITIONS: usize = 100;
pub const DEFAULT_FLUSH_BYTES: usize = 128 << 20;
const CACHE_LINE: usize = 64;

/// Anything that can be timed by the harness. Third-party sorts plug in here.
pub trait Sorter {
    fn name(&self) -> &str;
    fn sort(&self, input: &[Record<u64>]) -> Vec<Record<u64>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    ZSort,
    MergeStable,
    LsdRadix,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::ZSort,
        Algorithm::MergeStable,
        Algorithm::LsdRadix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ZSort => "zsort",
            Algorithm::MergeStable => "merge",
            Algorithm::LsdRadix => "lsd-radix",
        }
    }

    pub fn sorter(self, config: SortConfig) -> Box<dyn Sorter> {
        match self {
            Algorithm::ZSort => Box::new(ZSortSorter(config)),
            Algorithm::MergeStable => Box::new(FnSorter("merge", merge_sort_stable::<u64>)),
            Algorithm::LsdRadix => Box::new(FnSorter("lsd-radix", lsd_radix_sort_stable::<u64>)),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "zsort" | "z-sort" => Ok(Algorithm::ZSort),
            "merge" | "merge-stable" | "mergesort" => Ok(Algorithm::MergeStable),
            "lsd-radix" | "lsd_radix" | "radix" => Ok(Algorithm::LsdRadix),
            _ => Err(HarnessError::UnknownAlgorithm(s.to_string())),
        }
    }
}

struct ZSortSorter(SortConfig);

impl Sorter for ZSortSorter {
    fn name(&self) -> &str {
        "zsort"
    }

    fn sort(&self, input: &[Record<u64>]) -> Vec<Record<u64>> {
        zsort::zsort(input, &self.0).0
    }
}

/// Adapts a plain function.
pub struct FnSorter<F>(pub &'static str, pub F);

impl<F: Fn(&[Record<u64>]) -> Vec<Record<u64>>> Sorter for FnSorter<F> {
    fn name(&self) -> &str {
        self.0
    }

    fn sort(&self, input: &[Record<u64>]) -> Vec<Record<u64>> {
        (self.1)(input)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchSpec {
    pub algorithm: Algorithm,
    pub distribution: DistributionSpec,
    pub repetitions: usize,
    pub flush_bytes: usize,
    pub sort_config: SortConfig,
}

impl BenchSpec {
    pub fn new(algorithm: Algorithm, distribution: DistributionSpec) -> Self {
        BenchSpec {
            algorithm,
            distribution,
            repetitions: DEFAULT_REPETITIONS,
            flush_bytes: DEFAULT_FLUSH_BYTES,
            sort_config: SortConfig::default(),
        }
    }

    pub fn repetitions(mut self, reps: usize) -> Self {
        self.repetitions = reps;
        self
    }

    pub fn flush_bytes(mut self, bytes: usize) -> Self {
        self.flush_bytes = bytes;
        self
    }

    pub fn sort_config(mut self, config: SortConfig) -> Self {
        self.sort_config = config;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(HarnessError::InvalidParam(
                "repetitions must be at least 1".into(),
            ));
        }
        if self.flush_bytes == 0 {
            return Err(HarnessError::InvalidParam(
                "flush size must be at least 1 byte".into(),
            ));
        }
        self.sort_config.validate()?;
        self.distribution.validate()
    }
}

/// One verified benchmark cell. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialResult {
    pub algorithm: String,
    pub distribution: DistributionKind,
    pub size: usize,
    pub seed: u64,
    pub repetitions: usize,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub min_ms: f64,
    pub stddev_ms: f64,
    pub verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Timing {
    pub mean_ms: f64,
    pub median_ms: f64,
    pub min_ms: f64,
    /// Sample standard deviation; 0 for a single repetition.
    pub stddev_ms: f64,
}

impl Timing {
    pub fn from_samples(samples: &[f64]) -> Timing {
        assert!(!samples.is_empty(), "no timing samples");
        let n = samples.len();
        let mut s = samples.to_vec();
        s.sort_by(f64::total_cmp);
        let mean = s.iter().sum::<f64>() / n as f64;
        let median = if n % 2 == 1 {
            s[n / 2]
        } else {
            (s[n / 2 - 1] + s[n / 2]) / 2.0
        };
        let stddev = if n > 1 {
            (s.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Timing {
            mean_ms: mean,
            median_ms: median,
            min_ms: s[0],
            stddev_ms: stddev,
        }
    }
}

/// Reusable buffer swept before each timed sort to evict earlier data.
#[derive(Default)]
pub struct CacheFlusher {
    buf: Vec<u8>,
}

impl CacheFlusher {
    pub fn new() -> Self {
        Self::default()
    }

    /// Touches and mutates one byte per cache line of a `bytes`-long buffer.
    /// Returns a checksum of what it read so the sweep cannot be elided.
    pub fn flush(&mut self, bytes: usize) -> Result<u64> {
        if self.buf.len() < bytes {
            let extra = bytes - self.buf.len();
            self.buf
                .try_reserve_exact(extra)
                .map_err(|_| HarnessError::Alloc(bytes))?;
            self.buf.resize(bytes, 0);
        }
        let mut acc = 0u64;
        for i in (0..bytes).step_by(CACHE_LINE) {
            let b = self.buf[i].wrapping_add(1);
            self.buf[i] = b;
            acc = acc.wrapping_add(b as u64);
        }
        Ok(black_box(acc))
    }
}

/// Runs one benchmark cell with a built-in algorithm.
pub fn run_trial(spec: &BenchSpec) -> Result<TrialResult> {
    spec.validate()?;
    let sorter = spec.algorithm.sorter(spec.sort_config);
    run_trial_with(sorter.as_ref(), spec, &mut CacheFlusher::new())
}

/// Runs one benchmark cell with any [`Sorter`]. `spec.algorithm` is ignored.
pub fn run_trial_with(
    sorter: &dyn Sorter,
    spec: &BenchSpec,
    flusher: &mut CacheFlusher,
) -> Result<TrialResult> {
    spec.validate()?;
    let input = generate(&spec.distribution)?;
    let samples = timed_repetitions(
        sorter,
        &input,
        spec.repetitions,
        spec.flush_bytes,
        flusher,
        |out| {
            let report = check_stable_permutation(&input, out)?;
            if report.ok() {
                Ok(())
            } else {
                Err(HarnessError::Verification {
                    algorithm: sorter.name().to_string(),
                    distribution: spec.distribution.kind.to_string(),
                    size: input.len(),
                    index: report.first_violation_index,
                })
            }
        },
    )?;
    let t = Timing::from_samples(&samples);
    Ok(TrialResult {
        algorithm: sorter.name().to_string(),
        distribution: spec.distribution.kind,
        size: spec.distribution.size,
        seed: spec.distribution.seed,
        repetitions: spec.repetitions,
        mean_ms: t.mean_ms,
        median_ms: t.median_ms,
        min_ms: t.min_ms,
        stddev_ms: t.stddev_ms,
        verified: true,
    })
}

/// Timed loop; `check` runs on every output outside the timed region.
pub fn timed_repetitions(
    sorter: &dyn Sorter,
    input: &[Record<u64>],
    repetitions: usize,
    flush_bytes: usize,
    flusher: &mut CacheFlusher,
    mut check: impl FnMut(&[Record<u64>]) -> Result<()>,
) -> Result<Vec<f64>> {
    let mut samples = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let work = input.to_vec();
        flusher.flush(flush_bytes)?;
        let start = Instant::now();
        let out = sorter.sort(black_box(&work));
        let elapsed = start.elapsed();
        black_box(&out);
        check(&out)?;
        samples.push(elapsed.as_secs_f64() * 1e3);
    }
    Ok(samples)
}

#[derive(Debug)]
pub struct CellFailure {
    pub algorithm: Algorithm,
    pub distribution: DistributionKind,
    pub size: usize,
    pub error: HarnessError,
}

#[derive(Debug, Default)]
pub struct SuiteReport {
    pub results: Vec<TrialResult>,
    pub failures: Vec<CellFailure>,
}

impl SuiteReport {
    pub fn all_verified(&self) -> bool {
        self.failures.is_empty() && self.results.iter().all(|r| r.verified)
    }
}

/// Every combination of the given axes, in algorithm-major order.
pub fn build_matrix(
    algorithms: &[Algorithm],
    kinds: &[DistributionKind],
    sizes: &[usize],
    template: &BenchSpec,
) -> Vec<BenchSpec> {
    let mut out = Vec::new();
    for &algorithm in algorithms {
        for &kind in kinds {
            for &size in sizes {
                let mut spec = *template;
                spec.algorithm = algorithm;
                spec.distribution.kind = kind;
                spec.distribution.size = size;
                out.push(spec);
            }
        }
    }
    out
}

/// Runs the cells one after another, writing each CSV row as soon as its
/// cell finishes. A failing cell is recorded and the rest still run.
pub fn run_suite<W: Write>(matrix: &[BenchSpec], csv: &mut csv::Writer<W>) -> Result<SuiteReport> {
    if matrix.is_empty() {
        return Err(HarnessError::EmptyMatrix);
    }
    let mut flusher = CacheFlusher::new();
    let mut report = SuiteReport::default();
    for spec in matrix {
        let outcome = spec.validate().and_then(|_| {
            let sorter = spec.algorithm.sorter(spec.sort_config);
            run_trial_with(sorter.as_ref(), spec, &mut flusher)
        });
        match outcome {
            Ok(result) => {
                csv.serialize(&result)?;
                csv.flush().map_err(csv::Error::from)?;
                report.results.push(result);
            }
            Err(error) => report.failures.push(CellFailure {
                algorithm: spec.algorithm,
                distribution: spec.distribution.kind,
                size: spec.distribution.size,
                error,
            }),
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaPoint {
    pub alpha: f64,
    pub size: usize,
    pub repetitions: usize,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub min_ms: f64,
    pub stddev_ms: f64,
}

/// zsort on one uniform input per alpha; the same seed is reused so every
/// alpha sorts identical data.
pub fn alpha_sweep(alphas: &[f64], template: &BenchSpec) -> Result<Vec<AlphaPoint>> {
    if alphas.is_empty() {
        return Err(HarnessError::InvalidParam("no alpha values given".into()));
    }
    if let Some(a) = alphas.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
        return Err(HarnessError::InvalidParam(format!(
            "alpha must be positive, got {a}"
        )));
    }
    let mut flusher = CacheFlusher::new();
    let mut points = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let mut spec = *template;
        spec.algorithm = Algorithm::ZSort;
        spec.distribution.kind = DistributionKind::Uniform;
        spec.sort_config = spec.sort_config.with_alpha(alpha);
        let sorter = spec.algorithm.sorter(spec.sort_config);
        let r = run_trial_with(sorter.as_ref(), &spec, &mut flusher)?;
        points.push(AlphaPoint {
            alpha,
            size: r.size,
            repetitions: r.repetitions,
            mean_ms: r.mean_ms,
            median_ms: r.median_ms,
            min_ms: r.min_ms,
            stddev_ms: r.stddev_ms,
        });
    }
    Ok(points)
}
