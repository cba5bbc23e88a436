//! Seeded synthetic workloads.
//!
//! Every generator draws from a 64-bit Mersenne Twister (MT19937-64) seeded
//! with the spec's seed, so a spec always yields the same sequence. Payloads
//! are the 0-based position in the generated sequence.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_mt::Mt64;
use serde::{Deserialize, Serialize};
use zsort::Record;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistributionKind {
    Uniform,
    Normal,
    Skewed,
    NearlySorted,
    HighDuplicate,
}

impl DistributionKind {
    pub const ALL: [DistributionKind; 5] = [
        DistributionKind::Uniform,
        DistributionKind::Normal,
        DistributionKind::Skewed,
        DistributionKind::NearlySorted,
        DistributionKind::HighDuplicate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DistributionKind::Uniform => "uniform",
            DistributionKind::Normal => "normal",
            DistributionKind::Skewed => "skewed",
            DistributionKind::NearlySorted => "nearly-sorted",
            DistributionKind::HighDuplicate => "high-duplicate",
        }
    }
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistributionKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        DistributionKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| HarnessError::UnknownDistribution(s.to_string()))
    }
}

/// Knobs for every distribution family; each kind reads only its own.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistParams {
    pub normal_mean: f64,
    pub normal_std: f64,
    /// Pareto minimum value `x_m`.
    pub pareto_scale: f64,
    /// Pareto tail exponent; smaller is heavier.
    pub pareto_shape: f64,
    /// Fraction of `n` used as the number of random index-pair swaps.
    pub swap_fraction: f64,
    /// High-duplicate keys are uniform over `[0, duplicate_width)`.
    pub duplicate_width: u64,
}

impl Default for DistParams {
    fn default() -> Self {
        DistParams {
            normal_mean: 0.0,
            normal_std: 1e9,
            pareto_scale: 1.0,
            pareto_shape: 1.5,
            swap_fraction: 0.01,
            duplicate_width: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionSpec {
    pub kind: DistributionKind,
    pub size: usize,
    pub seed: u64,
    pub params: DistParams,
}

impl DistributionSpec {
    pub fn new(kind: DistributionKind, size: usize, seed: u64) -> Self {
        DistributionSpec {
            kind,
            size,
            seed,
            params: DistParams::default(),
        }
    }

    pub fn with_params(mut self, params: DistParams) -> Self {
        self.params = params;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        let bad = |msg: &str| Err(HarnessError::InvalidParam(msg.to_string()));
        if self.size == 0 {
            return bad("size must be at least 1");
        }
        match self.kind {
            DistributionKind::Normal if !(p.normal_std >= 0.0 && p.normal_std.is_finite()) => {
                bad("normal std must be finite and nonnegative")
            }
            DistributionKind::Normal if !p.normal_mean.is_finite() => {
                bad("normal mean must be finite")
            }
            DistributionKind::Skewed if !(p.pareto_shape > 0.0 && p.pareto_shape.is_finite()) => {
                bad("pareto shape must be positive")
            }
            DistributionKind::Skewed if !(p.pareto_scale > 0.0 && p.pareto_scale.is_finite()) => {
                bad("pareto scale must be positive")
            }
            DistributionKind::NearlySorted if !(0.0..=1.0).contains(&p.swap_fraction) => {
                bad("swap fraction must lie in [0, 1]")
            }
            DistributionKind::HighDuplicate
                if p.duplicate_width == 0 || p.duplicate_width > i64::MAX as u64 =>
            {
                bad("duplicate width must be in [1, 2^63)")
            }
            _ => Ok(()),
        }
    }
}

/// Uniform in `[0, 1)` with 53 random bits.
#[inline]
fn unit(rng: &mut Mt64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform in `(0, 1]`, safe for `ln` and negative powers.
#[inline]
fn unit_open_low(rng: &mut Mt64) -> f64 {
    1.0 - unit(rng)
}

/// Produces `spec.size` keys, payload = generation index.
pub fn generate(spec: &DistributionSpec) -> Result<Vec<Record<u64>>> {
    spec.validate()?;
    let keys = generate_keys(spec)?;
    Ok(zsort::sequenced(&keys))
}

pub fn generate_keys(spec: &DistributionSpec) -> Result<Vec<i64>> {
    spec.validate()?;
    let n = spec.size;
    let p = &spec.params;
    let mut rng = Mt64::new(spec.seed);
    let keys = match spec.kind {
        DistributionKind::Uniform => (0..n).map(|_| rng.next_u64() as i64).collect(),
        DistributionKind::Normal => {
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                // Box-Muller, both outputs used
                let r = (-2.0 * unit_open_low(&mut rng).ln()).sqrt();
                let theta = std::f64::consts::TAU * unit(&mut rng);
                for z in [r * theta.cos(), r * theta.sin()] {
                    if out.len() < n {
                        // float-to-int `as` saturates at the i64 bounds
                        out.push((p.normal_mean + p.normal_std * z).round() as i64);
                    }
                }
            }
            out
        }
        DistributionKind::Skewed => {
            let inv = -1.0 / p.pareto_shape;
            (0..n)
                .map(|_| (p.pareto_scale * unit_open_low(&mut rng).powf(inv)).floor() as i64)
                .collect()
        }
        DistributionKind::NearlySorted => {
            let mut v: Vec<i64> = (0..n).map(|_| rng.next_u64() as i64).collect();
            v.sort_unstable();
            for _ in 0..swap_count(n, p.swap_fraction) {
                let i = rng.random_range(0..n);
                let j = rng.random_range(0..n);
                v.swap(i, j);
            }
            v
        }
        DistributionKind::HighDuplicate => {
            let width = p.duplicate_width;
            (0..n).map(|_| rng.random_range(0..width) as i64).collect()
        }
    };
    Ok(keys)
}

/// `floor(fraction * n)` swaps.
pub fn swap_count(n: usize, fraction: f64) -> usize {
    (fraction * n as f64).floor() as usize
}

/// Self-check summary of a key sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistSummary {
    pub len: usize,
    pub min: i64,
    pub max: i64,
    pub distinct: usize,
    /// Pairs `i < j` with `keys[i] > keys[j]`; only computed up to
    /// [`INVERSION_LIMIT`] keys.
    pub inversions: Option<u64>,
}

pub const INVERSION_LIMIT: usize = 100_000;

pub fn distribution_stats(keys: &[i64]) -> Result<DistSummary> {
    if keys.is_empty() {
        return Err(HarnessError::InvalidParam(
            "cannot summarise an empty key set".into(),
        ));
    }
    let mut sorted = keys.to_vec();
    sorted.sort_unstable();
    let distinct = 1 + sorted.windows(2).filter(|w| w[0] != w[1]).count();
    let inversions = (keys.len() <= INVERSION_LIMIT).then(|| count_inversions(keys));
    Ok(DistSummary {
        len: keys.len(),
        min: sorted[0],
        max: sorted[sorted.len() - 1],
        distinct,
        inversions,
    })
}

/// Inversion count by merge sort, O(n log n).
pub fn count_inversions(keys: &[i64]) -> u64 {
    fn rec(v: &mut [i64], buf: &mut Vec<i64>) -> u64 {
        let n = v.len();
        if n < 2 {
            return 0;
        }
        let mid = n / 2;
        let mut inv = rec(&mut v[..mid], buf) + rec(&mut v[mid..], buf);
        buf.clear();
        let (mut i, mut j) = (0, mid);
        while i < mid && j < n {
            if v[j] < v[i] {
                inv += (mid - i) as u64;
                buf.push(v[j]);
                j += 1;
            } else {
                buf.push(v[i]);
                i += 1;
            }
        }
        buf.extend_from_slice(&v[i..mid]);
        buf.extend_from_slice(&v[j..n]);
        v.copy_from_slice(buf);
        inv
    }
    let mut v = keys.to_vec();
    rec(&mut v, &mut Vec::with_capacity(keys.len()))
}
