//! Workload generation, verification and benchmarking around [`zsort`].

pub mod bench;
pub mod datagen;
pub mod error;
pub mod keyfile;
pub mod radix;
pub mod verify;

pub use bench::{
    alpha_sweep, build_matrix, run_suite, run_trial, run_trial_with, Algorithm, AlphaPoint,
    BenchSpec, CacheFlusher, Sorter, SuiteReport, Timing, TrialResult,
};
pub use datagen::{
    distribution_stats, generate, generate_keys, DistParams, DistSummary, DistributionKind,
    DistributionSpec,
};
pub use error::HarnessError;
pub use radix::{lsd_radix_sort_counted, lsd_radix_sort_stable};
pub use verify::{check_sorted, check_stable_permutation, depth_probe, VerifyReport};
pub use zsort::merge_sort_stable;
