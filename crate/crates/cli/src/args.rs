use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "spacerev",
    version,
    about = "Spatially contained belief revision"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run contained revision on one instance.
    Revise(RunArgs),
    /// Run contained and global revision and compare their hitting sets.
    Compare(RunArgs),
    /// Sweep generated path or grid scenarios and time both engines.
    Bench(BenchArgs),
    /// Write a generated flood scenario.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = true)]
pub struct InputArgs {
    /// Flood scenario file.
    #[arg(long, conflicts_with_all = ["graph", "clauses"])]
    pub scenario: Option<PathBuf>,
    /// Parcel graph file; requires --clauses.
    #[arg(long, requires = "clauses")]
    pub graph: Option<PathBuf>,
    /// Clause file; requires --graph.
    #[arg(long, requires = "graph")]
    pub clauses: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedPolicyArg {
    Det,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Block radius.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Cover radius; must exceed --k.
    #[arg(long, default_value_t = 4)]
    pub kprime: usize,
    /// Tractable neighborhood size for the H0 gate.
    #[arg(long, default_value_t = 12)]
    pub kr: usize,
    /// Seed for the random seed policy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SeedPolicyArg::Det)]
    pub seed_policy: SeedPolicyArg,
    /// Largest minimal conflict explored before failing.
    #[arg(long, default_value_t = 6)]
    pub budget_card: usize,
    /// Worker threads for per-block passes.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the tab-separated report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    Path,
    Grid,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[arg(long, value_enum, default_value_t = LayoutArg::Path)]
    pub layout: LayoutArg,
    #[arg(long, default_value_t = 5)]
    pub levels: u32,
    #[arg(long, default_value_t = 0.6)]
    pub interval_density: f64,
    #[arg(long, default_value_t = 0.5)]
    pub flux_density: f64,
    /// Spatial size of each planted conflict; 0 plants nothing.
    #[arg(long, default_value_t = 2)]
    pub planted_size: usize,
    #[arg(long, default_value_t = 1)]
    pub planted_count: usize,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Parcels on a path, or columns of a grid.
    #[arg(long, default_value_t = 12)]
    pub parcels: usize,
    /// Grid rows (grid layout only).
    #[arg(long, default_value_t = 3)]
    pub rows: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 4)]
    pub kprime: usize,
    #[arg(long, default_value_t = 12)]
    pub kr: usize,
    /// Smallest block count in the sweep.
    #[arg(long, default_value_t = 2)]
    pub min_blocks: usize,
    /// Largest block count in the sweep.
    #[arg(long, default_value_t = 16)]
    pub max_blocks: usize,
    /// Block-count increment.
    #[arg(long, default_value_t = 2)]
    pub step: usize,
    /// Grid rows (grid layout only); columns grow with the block count.
    #[arg(long, default_value_t = 3)]
    pub rows: usize,
    /// Timed repetitions per point; the minimum is reported.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 8)]
    pub budget_card: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
}
