use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "g31x",
    version,
    about = "Edge counts of vertex subsets in G(n,3,1)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex count, degree, edge count and independence number.
    Info(InfoArgs),
    /// Table of every bound evaluator over an (n, l) grid.
    Bounds(BoundsArgs),
    /// Run the peeling procedure on one vertex set.
    Peel(PeelArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Maximum independent sets; fails above the cap.
    Exact,
    /// Greedy maximal independent sets.
    Greedy,
    /// Maximum within the cap, greedy above it.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlphaSource {
    /// Use n as the independence number proxy.
    N,
    /// Use the exact independence number (within --cap-exact).
    Exact,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    #[arg(long)]
    pub n: usize,
    /// Largest n for which the exact independence number is computed.
    #[arg(long, default_value_t = 10)]
    pub cap_exact: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
    pub n: Option<usize>,
    /// Inclusive range `A:B`.
    #[arg(long)]
    pub n_range: Option<String>,
    #[arg(long, conflicts_with = "l_range", required_unless_present = "l_range")]
    pub l: Option<usize>,
    /// Inclusive range `A:B` or `A:B:step`.
    #[arg(long)]
    pub l_range: Option<String>,
    /// Diameter cap for the ρ-dependent columns; they are `NA` without it.
    #[arg(long)]
    pub rho: Option<usize>,
    #[arg(long, value_enum, default_value_t = AlphaSource::N)]
    pub alpha: AlphaSource,
    /// Largest n for which the exact oracle (and exact alpha) is computed.
    #[arg(long, default_value_t = 7)]
    pub cap_exact: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PeelArgs {
    #[arg(long)]
    pub n: usize,
    /// Random W of this size (requires --seed); the full vertex set when absent.
    #[arg(long, conflicts_with = "input")]
    pub l: Option<usize>,
    /// File of triples, one per line, elements separated by spaces or commas.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub rho: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// `target` (⌊l/n⌋ steps), `all`, or a step count.
    #[arg(long, default_value = "target")]
    pub steps: String,
    /// Largest remainder handled by exact extraction.
    #[arg(long, default_value_t = 256)]
    pub cap_exact: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Inclusive range of n for the exhaustive suites.
    #[arg(long, default_value = "3:7")]
    pub n_range: String,
    /// Random instances per sampled suite.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest n for the oracle cross-check.
    #[arg(long, default_value_t = 6)]
    pub cap_exact: usize,
    #[arg(long)]
    pub strict_star: bool,
    /// Flip one adjacency entry in the reference counter (negative control).
    #[arg(long, hide = true)]
    pub tamper_adjacency: bool,
    #[command(flatten)]
    pub output: Output,
}
