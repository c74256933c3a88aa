//! Command-line front end: exact distances, QUBO export, sampling, the
//! penalty-weight sweep experiment, and re-verification of exported runs.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use wasserq::Norm;

#[derive(Parser)]
#[command(
    name = "wasserq",
    version,
    about = "Wasserstein distances between persistence diagrams via QUBO compilation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact distance between two diagram files (classical oracle)
    Distance(DistanceArgs),
    /// Compile a diagram pair into a QUBO and export it
    Qubo(QuboArgs),
    /// Sample a QUBO with the seeded annealer and print an energy histogram
    Sample(SampleArgs),
    /// Run the sampler across a list of penalty weights B
    Sweep(SweepArgs),
    /// Re-check an exported QUBO and sample set against each other
    Verify(VerifyArgs),
}

/// Metric parameters shared by all diagram-consuming commands.
#[derive(Args, Clone, Copy)]
struct MetricArgs {
    /// Outer exponent p (>= 1)
    #[arg(long, default_value_t = 2.0, value_parser = parse_exponent)]
    p: f64,
    /// Inner norm q (>= 1, or "inf")
    #[arg(long, default_value = "2")]
    q: Norm,
}

fn parse_exponent(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if p.is_finite() && p >= 1.0 {
        Ok(p)
    } else {
        Err(format!("p must be a finite number >= 1, got {s}"))
    }
}

/// Penalty weight selection: an explicit non-negative number, or "auto" for
/// a 10% margin above the largest edge weight.
#[derive(Clone, Copy, Debug)]
enum PenaltyArg {
    Auto,
    Value(f64),
}

impl FromStr for PenaltyArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(PenaltyArg::Auto);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| format!("expected a number or \"auto\", got {s:?}"))?;
        if v.is_finite() && v >= 0.0 {
            Ok(PenaltyArg::Value(v))
        } else {
            Err(format!("B must be finite and non-negative, got {s}"))
        }
    }
}

/// One entry of a sweep list: a number, B*, or B* with the auto margin.
#[derive(Clone, Copy, Debug)]
enum SweepPoint {
    Value(f64),
    BStar,
    BStarPlusEps,
}

impl FromStr for SweepPoint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("bstar") || t == "B*" || t == "b*" {
            return Ok(SweepPoint::BStar);
        }
        if t.eq_ignore_ascii_case("bstar+eps") || t.eq_ignore_ascii_case("b*+eps") {
            return Ok(SweepPoint::BStarPlusEps);
        }
        let v: f64 = t
            .parse()
            .map_err(|_| format!("expected a number, \"Bstar\" or \"Bstar+eps\", got {s:?}"))?;
        if v.is_finite() && v >= 0.0 {
            Ok(SweepPoint::Value(v))
        } else {
            Err(format!("B must be finite and non-negative, got {s}"))
        }
    }
}

#[derive(Args)]
struct DistanceArgs {
    /// First diagram file
    x: PathBuf,
    /// Second diagram file
    y: PathBuf,
    #[command(flatten)]
    metric: MetricArgs,
    /// Print the full run report as JSON instead of human output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct QuboArgs {
    /// First diagram file
    x: PathBuf,
    /// Second diagram file
    y: PathBuf,
    #[command(flatten)]
    metric: MetricArgs,
    /// Penalty weight: a number or "auto"
    #[arg(long = "B", default_value = "auto")]
    b: PenaltyArg,
    /// Export format
    #[arg(long, value_parser = ["qubo", "json"], default_value = "qubo")]
    format: String,
    /// Output file (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SamplerArgs {
    /// Number of independent reads
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    reads: u64,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sweeps per read (default from the schedule)
    #[arg(long)]
    sweeps: Option<usize>,
    /// Initial inverse temperature (default scale-aware)
    #[arg(long)]
    beta0: Option<f64>,
    /// Final inverse temperature (default scale-aware)
    #[arg(long)]
    beta1: Option<f64>,
}

#[derive(Args)]
struct SampleArgs {
    /// Diagram pair (two files), mutually exclusive with --qubo
    #[arg(value_name = "DIAGRAM", num_args = 0..=2)]
    diagrams: Vec<PathBuf>,
    /// Sample an already-exported QUBO file (.qubo text or JSON)
    #[arg(long, value_name = "FILE", conflicts_with = "diagrams")]
    qubo: Option<PathBuf>,
    #[command(flatten)]
    metric: MetricArgs,
    /// Penalty weight for the diagram-pair path
    #[arg(long = "B", default_value = "auto")]
    b: PenaltyArg,
    #[command(flatten)]
    sampler: SamplerArgs,
    /// Histogram bin width (default: energy range / 50)
    #[arg(long)]
    bins: Option<f64>,
    /// Write the sample-set JSON to this file
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print the sample-set JSON to stdout instead of human output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// First diagram file
    x: PathBuf,
    /// Second diagram file
    y: PathBuf,
    #[command(flatten)]
    metric: MetricArgs,
    /// Comma-separated penalty weights; entries may be numbers, "Bstar" or
    /// "Bstar+eps"
    #[arg(
        long = "B-list",
        value_delimiter = ',',
        default_value = "1,Bstar,Bstar+eps"
    )]
    b_list: Vec<SweepPoint>,
    #[command(flatten)]
    sampler: SamplerArgs,
    /// Print the sweep rows as JSON instead of a table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Exported QUBO file (.qubo text or JSON)
    #[arg(long, value_name = "FILE")]
    qubo: PathBuf,
    /// Exported sample-set JSON
    #[arg(long, value_name = "FILE")]
    samples: PathBuf,
    /// Optional diagram pair to re-check classifications and coefficients
    #[arg(value_name = "DIAGRAM", num_args = 0..=2)]
    diagrams: Vec<PathBuf>,
    #[command(flatten)]
    metric: MetricArgs,
}

/// Exit code for unreadable or unparseable input files.
const EXIT_DATA: u8 = 65;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Distance(args) => commands::distance(args),
        Command::Qubo(args) => commands::qubo(args),
        Command::Sample(args) => commands::sample(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Verify(args) => commands::verify(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let data_error = e.chain().any(|cause| {
                cause.downcast_ref::<wasserq::Error>().is_some()
                    || cause.downcast_ref::<std::io::Error>().is_some()
            });
            ExitCode::from(if data_error { EXIT_DATA } else { 1 })
        }
    }
}
