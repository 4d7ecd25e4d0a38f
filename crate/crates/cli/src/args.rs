use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "pmuplace",
    version,
    about = "Minimum PMU placement for topological observability"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    /// Parses an explicit argument list; the first item is the program name.
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Self::try_parse_from(args)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for a minimum placement.
    Solve(SolveArgs),
    /// Check a given placement against the selected regime.
    Verify(VerifyArgs),
    /// Exact minimum by exhaustive enumeration, with the greedy baseline.
    Certify(CertifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Native,
    Matpower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Base,
    LineOutage,
    PmuLoss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PmuLossModeArg {
    RemovalSim,
    CountThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Hbmo,
    Greedy,
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Case file, or one of the bundled names ieee14, ieee57, ieee118.
    #[arg(long, value_name = "PATH")]
    pub case: String,
    /// Case format; defaults to matpower for `.m` files, native otherwise.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Detect zero-injection buses from loads and generators (matpower only).
    #[arg(long)]
    pub detect_zib: bool,
    /// Use zero-injection bus inference.
    #[arg(long)]
    pub zib: bool,
    #[arg(long, value_enum, default_value = "base")]
    pub regime: RegimeArg,
    #[arg(long, value_enum, default_value = "removal-sim")]
    pub pmu_loss_mode: PmuLossModeArg,
    /// Minimum direct observation count for the count-threshold mode.
    #[arg(long, default_value_t = 2)]
    pub mob: u32,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub report: ReportFormat,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value = "hbmo")]
    pub algo: AlgoArg,
    /// Random seed; overrides the parameter file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// TOML file with HBMO parameter overrides.
    #[arg(long, value_name = "PATH")]
    pub params: Option<PathBuf>,
    /// Evaluate broods on all cores. Results are identical to serial runs.
    #[arg(long)]
    pub parallel: bool,
    /// Enumeration budget for the exhaustive algorithm.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated 1-based PMU buses; may be empty.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub placement: String,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest cardinality to enumerate.
    #[arg(long)]
    pub size_cap: Option<usize>,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
}
