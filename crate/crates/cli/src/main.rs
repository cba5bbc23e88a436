//! `zsort` command-line driver.
//!
//! Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.

use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use zsort::{merge_sort_stable, Record, SortConfig};
use zsort_harness::bench::{DEFAULT_FLUSH_BYTES, DEFAULT_REPETITIONS};
use zsort_harness::keyfile::{read_records, write_records, KeyFormat};
use zsort_harness::verify::{check_sorted, check_stable_permutation};
use zsort_harness::{
    alpha_sweep, build_matrix, generate, lsd_radix_sort_counted, run_suite, Algorithm, BenchSpec,
    DistParams, DistributionKind, DistributionSpec, VerifyReport,
};

#[derive(Parser)]
#[command(
    name = "zsort",
    version,
    about = "Stable z-score distribution sort: generate, sort, verify, benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic key file (.bin, .txt or .rec)
    Gen(GenArgs),
    /// Sort a key file
    Sort(SortArgs),
    /// Check that a sorted file is a stable sorted permutation of an input file
    Verify(VerifyArgs),
    /// Run a benchmark matrix and emit CSV
    Bench(BenchArgs),
    /// Time zsort on uniform data for several bucket-count multipliers
    AlphaSweep(AlphaArgs),
}

#[derive(Args, Clone)]
struct DistFlags {
    /// Mean of the normal distribution
    #[arg(long, default_value_t = DistParams::default().normal_mean, allow_hyphen_values = true)]
    normal_mean: f64,
    /// Standard deviation of the normal distribution
    #[arg(long, default_value_t = DistParams::default().normal_std)]
    normal_std: f64,
    /// Pareto minimum value for the skewed distribution
    #[arg(long, default_value_t = DistParams::default().pareto_scale)]
    pareto_scale: f64,
    /// Pareto tail exponent for the skewed distribution
    #[arg(long, default_value_t = DistParams::default().pareto_shape)]
    pareto_shape: f64,
    /// Fraction of n used as random swap count for nearly-sorted data
    #[arg(long, default_value_t = DistParams::default().swap_fraction)]
    swap_fraction: f64,
    /// High-duplicate keys are drawn from [0, width)
    #[arg(long, default_value_t = DistParams::default().duplicate_width)]
    dup_width: u64,
}

impl DistFlags {
    fn params(&self) -> DistParams {
        DistParams {
            normal_mean: self.normal_mean,
            normal_std: self.normal_std,
            pareto_scale: self.pareto_scale,
            pareto_shape: self.pareto_shape,
            swap_fraction: self.swap_fraction,
            duplicate_width: self.dup_width,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_dist)]
    dist: DistributionKind,
    #[arg(long)]
    size: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    dist_flags: DistFlags,
}

#[derive(Args)]
struct SortArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = SortConfig::default().alpha)]
    alpha: f64,
    #[arg(long, default_value = "zsort", value_parser = parse_algo)]
    algo: Algorithm,
    /// Print sort instrumentation to stderr
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Original unsorted file
    #[arg(long = "in")]
    input: PathBuf,
    /// Sorted file to check; use .rec to also check stability
    #[arg(long)]
    sorted: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "zsort,merge,lsd-radix", value_parser = parse_algo)]
    algos: Vec<Algorithm>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "uniform,normal,skewed,nearly-sorted,high-duplicate",
        value_parser = parse_dist
    )]
    dists: Vec<DistributionKind>,
    #[arg(long, value_delimiter = ',', default_value = "10000,100000")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_REPETITIONS)]
    reps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_FLUSH_BYTES / (1 << 20))]
    flush_mb: usize,
    #[arg(long, default_value_t = SortConfig::default().alpha)]
    alpha: f64,
    /// CSV destination, `-` for stdout
    #[arg(long, default_value = "-")]
    csv: String,
    /// Also write results as a JSON array
    #[arg(long)]
    json: Option<PathBuf>,
    #[command(flatten)]
    dist_flags: DistFlags,
}

#[derive(Args)]
struct AlphaArgs {
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.4,0.6,0.8,1.0,1.2",
        allow_hyphen_values = true
    )]
    alphas: Vec<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    size: usize,
    #[arg(long, default_value_t = 20)]
    reps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_FLUSH_BYTES / (1 << 20))]
    flush_mb: usize,
    /// CSV destination, `-` for stdout
    #[arg(long, default_value = "-")]
    csv: String,
}

/// Bad flag values detected after parsing; reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_dist(s: &str) -> Result<DistributionKind, String> {
    s.parse()
        .map_err(|e: zsort_harness::HarnessError| e.to_string())
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse()
        .map_err(|e: zsort_harness::HarnessError| e.to_string())
}

fn check_format(path: &std::path::Path) -> Result<()> {
    KeyFormat::from_path(path)
        .map(|_| ())
        .map_err(|e| usage(e.to_string()))
}

fn csv_writer(dest: &str) -> Result<csv::Writer<Box<dyn io::Write>>> {
    let sink: Box<dyn io::Write> = if dest == "-" {
        Box::new(io::stdout().lock())
    } else {
        Box::new(fs::File::create(dest).with_context(|| format!("creating {dest}"))?)
    };
    Ok(csv::Writer::from_writer(sink))
}

fn cmd_gen(a: GenArgs) -> Result<ExitCode> {
    check_format(&a.out)?;
    let spec = DistributionSpec::new(a.dist, a.size, a.seed).with_params(a.dist_flags.params());
    spec.validate().map_err(|e| usage(e.to_string()))?;
    let records = generate(&spec)?;
    write_records(&a.out, &records)?;
    eprintln!(
        "wrote {} {} keys to {}",
        records.len(),
        a.dist,
        a.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_sort(a: SortArgs) -> Result<ExitCode> {
    check_format(&a.input)?;
    check_format(&a.out)?;
    let config = SortConfig {
        alpha: a.alpha,
        collect_stats: a.stats,
        ..Default::default()
    };
    config.validate().map_err(|e| usage(e.to_string()))?;
    let input = read_records(&a.input)?;
    let sorted = match a.algo {
        Algorithm::ZSort => {
            let (out, stats) = zsort::zsort(&input, &config);
            if a.stats {
                eprintln!("{stats:#?}");
            }
            out
        }
        Algorithm::MergeStable => merge_sort_stable(&input),
        Algorithm::LsdRadix => {
            let (out, passes) = lsd_radix_sort_counted(&input);
            if a.stats {
                eprintln!("lsd radix passes: {passes}");
            }
            out
        }
    };
    write_records(&a.out, &sorted)?;
    Ok(ExitCode::SUCCESS)
}

/// Key-only sorted files carry no positions, so equal keys are
/// interchangeable: stability reduces to sortedness plus key-multiset
/// equality.
fn verify_keys_only(input: &[Record<u64>], sorted: &[Record<u64>]) -> VerifyReport {
    let expect = merge_sort_stable(input);
    let (is_sorted, unsorted_at) = check_sorted(sorted);
    let mismatch = expect.iter().zip(sorted).position(|(e, s)| e.key != s.key);
    let permutation = expect.len() == sorted.len() && mismatch.is_none();
    let length_at = (expect.len() != sorted.len()).then(|| expect.len().min(sorted.len()));
    let first = [unsorted_at, mismatch, length_at]
        .into_iter()
        .flatten()
        .min();
    VerifyReport {
        sorted: is_sorted,
        permutation,
        stable: is_sorted && permutation,
        first_violation_index: first,
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode> {
    check_format(&a.input)?;
    let sorted_format = KeyFormat::from_path(&a.sorted).map_err(|e| usage(e.to_string()))?;
    let input = read_records(&a.input)?;
    let sorted = read_records(&a.sorted)?;
    let report = if sorted_format == KeyFormat::Records {
        check_stable_permutation(&input, &sorted)?
    } else {
        verify_keys_only(&input, &sorted)
    };
    println!("{}", serde_json::to_string(&report)?);
    if report.ok() {
        Ok(ExitCode::SUCCESS)
    } else {
        if let Some(i) = report.first_violation_index {
            let what = if !report.sorted {
                "order"
            } else if !report.permutation {
                "permutation"
            } else {
                "stability"
            };
            eprintln!("{what} violation at index {i}");
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_bench(a: BenchArgs) -> Result<ExitCode> {
    if a.reps == 0 || a.flush_mb == 0 || a.sizes.contains(&0) {
        bail!(usage("reps, flush-mb and sizes must be positive"));
    }
    let config = SortConfig::default().with_alpha(a.alpha);
    config.validate().map_err(|e| usage(e.to_string()))?;
    let distribution = DistributionSpec::new(DistributionKind::Uniform, 1, a.seed)
        .with_params(a.dist_flags.params());
    let template = BenchSpec::new(Algorithm::ZSort, distribution)
        .repetitions(a.reps)
        .flush_bytes(a.flush_mb << 20)
        .sort_config(config);
    let matrix = build_matrix(&a.algos, &a.dists, &a.sizes, &template);
    if matrix.is_empty() {
        bail!(usage("benchmark matrix is empty"));
    }
    let mut csv = csv_writer(&a.csv)?;
    let report = run_suite(&matrix, &mut csv)?;
    drop(csv);
    if let Some(path) = &a.json {
        fs::write(path, serde_json::to_string_pretty(&report.results)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    for f in &report.failures {
        eprintln!(
            "FAILED {} {} n={}: {}",
            f.algorithm, f.distribution, f.size, f.error
        );
    }
    Ok(if report.all_verified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_alpha_sweep(a: AlphaArgs) -> Result<ExitCode> {
    if let Some(bad) = a.alphas.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        bail!(usage(format!("alpha must be positive, got {bad}")));
    }
    if a.reps == 0 || a.size == 0 || a.flush_mb == 0 {
        bail!(usage("size, reps and flush-mb must be positive"));
    }
    let template = BenchSpec::new(
        Algorithm::ZSort,
        DistributionSpec::new(DistributionKind::Uniform, a.size, a.seed),
    )
    .repetitions(a.reps)
    .flush_bytes(a.flush_mb << 20);
    let points = alpha_sweep(&a.alphas, &template)?;
    let mut csv = csv_writer(&a.csv)?;
    for p in &points {
        csv.serialize(p)?;
    }
    csv.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Sort(a) => cmd_sort(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::AlphaSweep(a) => cmd_alpha_sweep(a),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
