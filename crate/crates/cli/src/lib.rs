//! `rubikai` command-line front end.
//!
//! Every command writes to a caller-supplied writer so the same code backs the
//! binary and the tests. Output carries no wall-clock values unless `--timing`
//! is given, which keeps seeded runs byte-identical.

mod commands;
mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::run;
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "rubikai",
    version,
    about = "Cube solving, plan compilation and pipeline simulation"
)]
pub struct Cli {
    /// Seed for every random draw. Commands that take a config file use its
    /// seed unless this is given.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include elapsed wall-clock times in the output.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Directory for the cached search tables.
    #[arg(long, global = true, env = "RUBIK_KB_CACHE")]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Random scramble of `depth` moves.
    Scramble { depth: usize },
    /// Solve a 54-character facelet descriptor.
    Solve {
        descriptor: String,
        #[arg(long, value_enum, default_value_t = BackendArg::Kb)]
        backend: BackendArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Solve seeded scrambles with every backend and tabulate the lengths.
    Compare {
        #[arg(default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
    /// Per-step face match rates while a solution restores the cube, as CSV.
    Trace {
        descriptor: String,
        #[arg(long, value_enum, default_value_t = BackendArg::Kb)]
        backend: BackendArg,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compile a descriptor (solved first with the KB solver) or a move string
    /// into primitive commands.
    Plan {
        input: String,
        /// Also plan an approach trajectory for every subtask.
        #[arg(long)]
        scene: bool,
        /// Write plan.json, plan.txt and trajectory files here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Monte-Carlo pipeline campaign.
    Pipeline {
        /// TOML campaign config. Defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        trials_per_depth: Option<usize>,
        /// Write the per-depth table as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Kb,
    TwoPhase,
    Lbl,
    Shallow,
}

/// Overrides on top of the backend's default budget.
#[derive(Clone, Copy, Debug, Default, Args)]
pub struct BudgetArgs {
    #[arg(long)]
    pub max_total_length: Option<usize>,
    #[arg(long)]
    pub target_length: Option<usize>,
    #[arg(long)]
    pub max_phase1_candidates: Option<u64>,
    #[arg(long)]
    pub time_cap_ms: Option<u64>,
    #[arg(long)]
    pub exhaustive_depth: Option<usize>,
    /// Depth limit for the shallow backend.
    #[arg(long, default_value_t = 7)]
    pub max_depth: usize,
}
