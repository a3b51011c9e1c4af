//! `fuzzymetric`: generate instances, compute distance matrices, run audits.
//!
//! Every command reads instance records (one JSON object per line) from a
//! file or stdin and writes line-oriented report records to stdout, with a
//! short human summary on stderr. Exit codes: 0 pass, 1 audit failure,
//! 2 usage, configuration or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "fuzzymetric", version, about = "Endograph metrics and compactness audits for fuzzy sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pairwise distance matrix of the sets or fuzzy sets in the input.
    Dist(DistArgs),
    /// Γ-convergence check of a sequence against its recorded limit, or an oscillation probe without one.
    GammaCheck(GammaArgs),
    /// Total-boundedness audit of families (fuzzy) or of all set records (ground level).
    TbAudit(TbArgs),
    /// Diagonal subsequence extraction from a sequence.
    Extract(ExtractArgs),
    /// Write generated instance records.
    Gen(GenArgs),
    /// Class membership of every fuzzy set in the input.
    Classify(Io),
}

#[derive(Args)]
struct Io {
    /// Input instance file; `-` reads stdin.
    #[arg(default_value = "-")]
    input: PathBuf,
    /// Write records here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Metric {
    /// Endograph metric with the sum product metric.
    Hend,
    /// Endograph metric with the max product metric.
    HendMax,
    /// Hausdorff metric on ground sets.
    Hausdorff,
}

#[derive(Args)]
struct DistArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, value_enum, default_value_t = Metric::Hend)]
    metric: Metric,
}

#[derive(Args)]
struct GammaArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    /// Override the recorded tail start (1-based).
    #[arg(long)]
    tail: Option<usize>,
}

#[derive(Args)]
struct TbArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Comma-separated levels in (0,1].
    #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 0.75, 1.0])]
    alpha_grid: Vec<f64>,
    /// Maximum number of net centers.
    #[arg(long, default_value_t = 64)]
    budget: usize,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    io: Io,
    /// Number of stages of the dyadic schedule.
    #[arg(long, default_value_t = 6)]
    stages: usize,
    /// Level floor ξ; defaults to min(1, smallest tail height).
    #[arg(long)]
    xi: Option<f64>,
    /// Maximum number of net centers per stage; defaults to the window length.
    #[arg(long)]
    budget: Option<usize>,
    /// Override the recorded tail start (1-based).
    #[arg(long)]
    tail: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Generator {
    RandomFamily,
    Escaping,
    Oscillating,
    Nested,
    Empu,
    Rnce,
    Convergent,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Points,
    Intervals,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    generator: Generator,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sequence length.
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    spacing: f64,
    #[arg(long, default_value_t = 10)]
    members: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, value_enum, default_value_t = Shape::Points)]
    shape: Shape,
    /// Height parameter of the counterexample generators.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = 1e-3)]
    mesh: f64,
    #[arg(long, default_value_t = 1)]
    tail: usize,
    /// Translation amplitude of the convergent generator.
    #[arg(long, default_value_t = 0.5)]
    amplitude: f64,
    #[arg(long)]
    coord_grain: Option<f64>,
    #[arg(long)]
    level_grain: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fuzzymetric: {e}");
            e.exit_code()
        }
    }
}
