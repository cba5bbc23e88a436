//! Acceptance suite. Runs every criterion in order, prints one PASS/FAIL line
//! each, and exits nonzero if any failed. Timing criteria use median
//! cold-cache times and only assert relative shapes.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_mt::Mt64;
use zsort::{merge_sort_stable, sequenced, zsort, MappingParams, Record, SortConfig};
use zsort_harness::bench::{
    timed_repetitions, CacheFlusher, FnSorter, Sorter, Timing, DEFAULT_FLUSH_BYTES,
};
use zsort_harness::{
    check_stable_permutation, depth_probe, generate, lsd_radix_sort_counted, DistParams,
    DistributionKind, DistributionSpec, HarnessError,
};

const ORACLE_SIZES: [usize; 4] = [1_000, 10_000, 100_000, 1_000_000];
const ORACLE_SEEDS: [u64; 3] = [1, 2, 3];
const DEPTH_SIZES: [usize; 3] = [100_000, 1_000_000, 10_000_000];
const MAX_DEPTH: usize = 3;
const RADIX_PASSES: usize = 8;
const MEAN_EST_CASES: usize = 10_000;
const MEAN_EST_REL_TOL: f64 = 1e-9;
const TIMED_REPS: usize = 20;
const PERF_N: usize = 1_000_000;
const MIN_SPEEDUP_VS_MERGE: f64 = 1.5;
const MAX_DUPLICATE_RATIO: f64 = 0.8;
const SCALING_BAND: (f64, f64) = (5.0, 25.0);
const SEED: u64 = 42;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnMut() -> Outcome>);
type TimedCriterion = (&'static str, fn(&mut CacheFlusher) -> Outcome);

fn uniform(n: usize, seed: u64) -> Vec<Record<u64>> {
    generate(&DistributionSpec::new(DistributionKind::Uniform, n, seed)).unwrap()
}

fn zsorter(config: SortConfig) -> impl Sorter {
    FnSorter("zsort", move |v: &[Record<u64>]| zsort(v, &config).0)
}

/// Median cold-cache time, verifying every output.
fn median_ms(
    sorter: &dyn Sorter,
    input: &[Record<u64>],
    flusher: &mut CacheFlusher,
) -> Result<f64, String> {
    let samples = timed_repetitions(
        sorter,
        input,
        TIMED_REPS,
        DEFAULT_FLUSH_BYTES,
        flusher,
        |out| {
            let r = check_stable_permutation(input, out)?;
            if r.ok() {
                Ok(())
            } else {
                Err(HarnessError::Verification {
                    algorithm: sorter.name().into(),
                    distribution: String::new(),
                    size: input.len(),
                    index: r.first_violation_index,
                })
            }
        },
    )
    .map_err(|e| e.to_string())?;
    Ok(Timing::from_samples(&samples).median_ms)
}

fn oracle_suite() -> Outcome {
    let cfg = SortConfig::default();
    let mut cells = 0;
    for kind in DistributionKind::ALL {
        for n in ORACLE_SIZES {
            for seed in ORACLE_SEEDS {
                let input = generate(&DistributionSpec::new(kind, n, seed)).unwrap();
                let (got, _) = zsort(&input, &cfg);
                let expect = merge_sort_stable(&input);
                if got != expect {
                    let at = got.iter().zip(&expect).position(|(a, b)| a != b);
                    return Err(format!(
                        "{kind} n={n} seed={seed}: first mismatch at {at:?}"
                    ));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells identical to stable merge sort"))
}

fn depth_bound() -> Outcome {
    let mut parts = Vec::new();
    for n in DEPTH_SIZES {
        let s = depth_probe(&uniform(n, SEED), &SortConfig::default());
        if s.max_depth_reached > MAX_DEPTH || s.fallback_invocations != 0 {
            return Err(format!("n={n}: {s:?}"));
        }
        parts.push(format!("n={n} depth={} fallbacks=0", s.max_depth_reached));
    }
    Ok(parts.join(", "))
}

fn pass_contrast() -> Outcome {
    let input = uniform(PERF_N, SEED);
    let (_, passes) = lsd_radix_sort_counted(&input);
    let s = depth_probe(&input, &SortConfig::default());
    let norm = s.normalized_scatter_passes(input.len());
    if passes != RADIX_PASSES {
        return Err(format!("lsd radix ran {passes} passes"));
    }
    if s.max_depth_reached > MAX_DEPTH || norm > MAX_DEPTH as f64 {
        return Err(format!(
            "zsort depth {} normalized scatter passes {norm:.3}",
            s.max_depth_reached
        ));
    }
    Ok(format!(
        "lsd radix {passes} passes; zsort {} levels, {norm:.3} full-array scatter passes",
        s.max_depth_reached
    ))
}

fn mean_est_inverse() -> Outcome {
    let mut rng = Mt64::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..MEAN_EST_CASES {
        let k = rng.random_range(2..5000usize);
        let std = 10f64.powf(rng.random_range(-3.0..15.0));
        let mean = std * rng.random_range(-100.0..100.0);
        let zmin = rng.random_range(0.0..6.0);
        let p = MappingParams {
            mean,
            std,
            zmin,
            scale: k as f64 / 4.0,
            k,
        };
        let i = rng.random_range(0..k);
        let want = i as f64 + 0.5;
        let rel = (p.position(p.estimated_mean(i)) - want).abs() / want;
        worst = worst.max(rel);
        if rel > MEAN_EST_REL_TOL {
            return Err(format!("i={i} rel error {rel:e} for {p:?}"));
        }
    }
    Ok(format!(
        "{MEAN_EST_CASES} cases, worst relative error {worst:.2e}"
    ))
}

fn termination() -> Outcome {
    let mut rng = Mt64::seed_from_u64(SEED);
    let n = 200_000;
    let two: Vec<i64> = (0..n)
        .map(|_| if rng.random::<bool>() { 17 } else { -4 })
        .collect();
    let extreme: Vec<i64> = (0..n)
        .map(|_| {
            if rng.random::<bool>() {
                i64::MIN
            } else {
                i64::MAX
            }
        })
        .collect();
    let pareto = generate(
        &DistributionSpec::new(DistributionKind::Skewed, PERF_N, SEED).with_params(DistParams {
            pareto_shape: 1.1,
            ..Default::default()
        }),
    )
    .unwrap();
    let cases = [
        ("all-equal", sequenced(&vec![123_456_789; n])),
        ("two-values", sequenced(&two)),
        ("extreme-pair", sequenced(&extreme)),
        ("pareto-1.1", pareto),
    ];
    let mut parts = Vec::new();
    for (name, input) in cases {
        let (out, stats) = zsort(&input, &SortConfig::default().with_stats());
        let r = check_stable_permutation(&input, &out).map_err(|e| e.to_string())?;
        if !r.ok() {
            return Err(format!("{name}: {r:?}"));
        }
        parts.push(format!(
            "{name} ok (fallbacks {})",
            stats.fallback_invocations
        ));
    }
    Ok(parts.join(", "))
}

fn speedup_vs_merge(flusher: &mut CacheFlusher) -> Outcome {
    let input = uniform(PERF_N, SEED);
    let z = median_ms(&zsorter(SortConfig::default()), &input, flusher)?;
    let m = median_ms(
        &FnSorter("merge", merge_sort_stable::<u64>),
        &input,
        flusher,
    )?;
    let speedup = m / z;
    let msg = format!(
        "zsort {z:.2} ms, merge {m:.2} ms, speedup {speedup:.2}x (need >= {MIN_SPEEDUP_VS_MERGE})"
    );
    if speedup >= MIN_SPEEDUP_VS_MERGE {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn duplicate_advantage(flusher: &mut CacheFlusher) -> Outcome {
    let dup = generate(&DistributionSpec::new(
        DistributionKind::HighDuplicate,
        PERF_N,
        SEED,
    ))
    .unwrap();
    let uni = uniform(PERF_N, SEED);
    let s = zsorter(SortConfig::default());
    let d = median_ms(&s, &dup, flusher)?;
    let u = median_ms(&s, &uni, flusher)?;
    let ratio = d / u;
    let msg = format!("high-duplicate {d:.2} ms, uniform {u:.2} ms, ratio {ratio:.3} (need <= {MAX_DUPLICATE_RATIO})");
    if ratio <= MAX_DUPLICATE_RATIO {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn alpha_shape(flusher: &mut CacheFlusher) -> Outcome {
    let input = uniform(PERF_N, SEED);
    let low = median_ms(
        &zsorter(SortConfig::default().with_alpha(0.6)),
        &input,
        flusher,
    )?;
    let high = median_ms(
        &zsorter(SortConfig::default().with_alpha(1.2)),
        &input,
        flusher,
    )?;
    let msg = format!("alpha 0.6: {low:.2} ms, alpha 1.2: {high:.2} ms");
    if low <= high {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn scaling(flusher: &mut CacheFlusher) -> Outcome {
    let s = zsorter(SortConfig::default());
    let small = median_ms(&s, &uniform(PERF_N / 10, SEED), flusher)?;
    let large = median_ms(&s, &uniform(PERF_N, SEED), flusher)?;
    let ratio = large / small;
    let msg = format!(
        "t(1e6) {large:.2} ms / t(1e5) {small:.3} ms = {ratio:.2} (band [{}, {}])",
        SCALING_BAND.0, SCALING_BAND.1
    );
    if (SCALING_BAND.0..=SCALING_BAND.1).contains(&ratio) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn main() -> ExitCode {
    let mut flusher = CacheFlusher::new();
    let mut criteria: Vec<Criterion> = vec![
        (
            "1 oracle equivalence, 5 dists x 4 sizes x 3 seeds",
            Box::new(oracle_suite),
        ),
        (
            "2 depth <= 3 and no fallback on uniform",
            Box::new(depth_bound),
        ),
        (
            "3 pass-count contrast vs LSD radix",
            Box::new(pass_contrast),
        ),
        (
            "4 estimated-mean midpoint inverse",
            Box::new(mean_est_inverse),
        ),
        ("5 termination on adversarial inputs", Box::new(termination)),
    ];
    let mut timed: Vec<TimedCriterion> = vec![
        (
            "6 >= 1.5x faster than stable merge sort (uniform 1e6)",
            speedup_vs_merge,
        ),
        (
            "7 high-duplicate <= 0.8x uniform time (1e6)",
            duplicate_advantage,
        ),
        (
            "8 alpha 0.6 no slower than alpha 1.2 (uniform 1e6)",
            alpha_shape,
        ),
        ("9 near-linear scaling 1e5 -> 1e6", scaling),
    ];

    let mut failed = 0;
    let mut report = |name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS  criterion {name}: {msg} [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg} [{secs:.1}s]");
            }
        }
    };
    for (name, f) in criteria.iter_mut() {
        let start = Instant::now();
        report(name, start, f());
    }
    for (name, f) in timed.iter_mut() {
        let start = Instant::now();
        report(name, start, f(&mut flusher));
    }

    if failed == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
