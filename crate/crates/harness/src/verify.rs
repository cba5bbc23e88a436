//! Correctness checkers shared by tests, the benchmark harness and the CLI.

use serde::Serialize;
use zsort::{Record, SortConfig, SortStats};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub sorted: bool,
    pub permutation: bool,
    /// Implies `sorted` and `permutation`.
    pub stable: bool,
    pub first_violation_index: Option<usize>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.sorted && self.permutation && self.stable
    }
}

/// Index of the first key smaller than its predecessor, if any.
pub fn first_unsorted<P>(records: &[Record<P>]) -> Option<usize> {
    records
        .windows(2)
        .position(|w| w[1].key < w[0].key)
        .map(|i| i + 1)
}

pub fn check_sorted<P>(records: &[Record<P>]) -> (bool, Option<usize>) {
    let at = first_unsorted(records);
    (at.is_none(), at)
}

/// Maps payloads back to input positions.
enum Ranks {
    /// Input payloads are exactly `0..n` in order.
    Identity(usize),
    Sorted(Vec<(u64, usize)>),
}

impl Ranks {
    fn build(input: &[Record<u64>]) -> Result<Self> {
        if input.iter().enumerate().all(|(i, r)| r.payload == i as u64) {
            return Ok(Ranks::Identity(input.len()));
        }
        let mut v: Vec<(u64, usize)> = input
            .iter()
            .enumerate()
            .map(|(i, r)| (r.payload, i))
            .collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(HarnessError::PayloadCollision { payload: w[0].0 });
        }
        Ok(Ranks::Sorted(v))
    }

    #[inline]
    fn rank(&self, payload: u64) -> Option<usize> {
        match self {
            Ranks::Identity(n) => (payload < *n as u64).then_some(payload as usize),
            Ranks::Sorted(v) => v
                .binary_search_by_key(&payload, |e| e.0)
                .ok()
                .map(|i| v[i].1),
        }
    }
}

/// Checks that `output` is a sorted, stable permutation of `input`.
///
/// Payloads must be distinct; their order in `input` defines the original
/// order used for the stability check. Equal-key runs in `output` must list
/// their records in increasing input position.
pub fn check_stable_permutation(
    input: &[Record<u64>],
    output: &[Record<u64>],
) -> Result<VerifyReport> {
    let ranks = Ranks::build(input)?;
    let mut first: Option<usize> = None;
    let mut note = |i: usize| {
        first = Some(first.map_or(i, |f: usize| f.min(i)));
    };

    let (sorted, at) = check_sorted(output);
    if let Some(i) = at {
        note(i);
    }

    let mut permutation = output.len() == input.len();
    if !permutation {
        note(output.len().min(input.len()));
    }
    let mut seen = vec![false; input.len()];
    let mut stable_runs = true;
    let mut prev_rank: Option<usize> = None;
    for (i, r) in output.iter().enumerate() {
        let rank = ranks.rank(r.payload);
        match rank {
            Some(j) if !seen[j] && input[j].key == r.key => seen[j] = true,
            _ => {
                permutation = false;
                note(i);
            }
        }
        if i > 0 && output[i - 1].key == r.key {
            if let (Some(p), Some(c)) = (prev_rank, rank) {
                if c <= p {
                    stable_runs = false;
                    note(i);
                }
            }
        }
        prev_rank = rank;
    }

    Ok(VerifyReport {
        sorted,
        permutation,
        stable: stable_runs && sorted && permutation,
        first_violation_index: first,
    })
}

/// Runs zsort with instrumentation switched on and returns its stats.
pub fn depth_probe(records: &[Record<u64>], config: &SortConfig) -> SortStats {
    let cfg = SortConfig {
        collect_stats: true,
        ..*config
    };
    zsort::zsort(records, &cfg).1
}
