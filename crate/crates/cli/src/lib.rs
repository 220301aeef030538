//! Command-line front end. Every command prints one JSON document on stdout
//! and exits with 0 (success, or the checked property holds), 1 (checked and
//! false) or 2 (error, or the answer is unknown within budget).

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use aecolor::io::ParseError;
use aecolor::lab::discharge::RuleSet;
use aecolor::solver::SolveBudget;
use aecolor::{Color, Execution, Graph};

pub mod commands;
pub mod config;
pub mod report;

pub use config::{ExperimentConfig, ExperimentKind};

pub const ENV_BUDGET_NODES: &str = "AECOLOR_BUDGET_NODES";
pub const ENV_BUDGET_SECS: &str = "AECOLOR_BUDGET_SECS";
pub const DEFAULT_BUDGET_NODES: u64 = 200_000_000;
pub const DEFAULT_BUDGET_SECS: f64 = 120.0;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    False = 1,
    Unknown = 2,
}

/// What a command prints and how it exits.
#[derive(Clone, Debug)]
pub struct Output {
    pub stdout: String,
    pub exit: Exit,
}

impl Output {
    pub fn json(value: &impl serde::Serialize, exit: Exit) -> Self {
        Output {
            stdout: serde_json::to_string_pretty(value).expect("reports serialize"),
            exit,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "aecolor", version, about = "Acyclic edge coloring toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Color a graph with the move-based colorer.
    Color(ColorArgs),
    /// Validate a coloring file against a graph.
    Check(CheckArgs),
    /// Exact acyclic chromatic index.
    ChiA(ChiArgs),
    /// Exact maximum average degree.
    Mad(FileArg),
    /// Evaluate the critical-graph predicates at palette size k.
    Lemmas(LemmaArgs),
    /// Run a discharging rule set.
    Discharge(DischargeArgs),
    /// Find all small critical graphs and check them.
    CriticalSweep(SweepArgs),
    /// Batch experiment over random instances.
    Experiment(ExperimentArgs),
    /// Print a random graph in edge-list format.
    Generate(GenerateArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct BudgetArgs {
    /// Search node limit for the exact solver [env: AECOLOR_BUDGET_NODES].
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Wall-clock limit in seconds for the exact solver [env: AECOLOR_BUDGET_SECS].
    #[arg(long)]
    pub budget_secs: Option<f64>,
}

fn env_or<T: FromStr>(name: &str, default: T) -> Result<T, CliError> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("{name}: cannot parse `{v}`"))),
        Err(_) => Ok(default),
    }
}

impl BudgetArgs {
    /// Node and second limits after falling back to the environment and
    /// then the built-in defaults.
    pub fn limits(&self) -> Result<(u64, f64), CliError> {
        let nodes = match self.budget_nodes {
            Some(n) => n,
            None => env_or(ENV_BUDGET_NODES, DEFAULT_BUDGET_NODES)?,
        };
        let secs = match self.budget_secs {
            Some(s) => s,
            None => env_or(ENV_BUDGET_SECS, DEFAULT_BUDGET_SECS)?,
        };
        Ok((nodes, secs))
    }

    pub fn resolve(&self) -> Result<SolveBudget, CliError> {
        let (nodes, secs) = self.limits()?;
        make_budget(nodes, secs)
    }
}

pub fn make_budget(nodes: u64, secs: f64) -> Result<SolveBudget, CliError> {
    if !(secs.is_finite() && secs > 0.0) {
        return Err(CliError::Invalid(format!("time budget must be positive, got {secs}")));
    }
    SolveBudget::new(nodes, Duration::from_secs_f64(secs))
        .map_err(|e| CliError::Invalid(format!("{e}")))
}

#[derive(Args, Debug)]
pub struct FileArg {
    /// Graph in edge-list format.
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub struct ColorArgs {
    pub file: PathBuf,
    /// Palette size; chosen from the exact mad when omitted.
    #[arg(long)]
    pub k: Option<Color>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report failure instead of calling the exact solver when stuck.
    #[arg(long)]
    pub no_fallback: bool,
    /// Move budget; 50 |E| when omitted.
    #[arg(long)]
    pub move_budget: Option<usize>,
    /// Write the move trace as JSON.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Write a Graphviz drawing.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Write the coloring file.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub graph: PathBuf,
    pub coloring: PathBuf,
    /// Accept colorings that leave edges uncolored.
    #[arg(long)]
    pub allow_partial: bool,
}

#[derive(Args, Debug)]
pub struct ChiArgs {
    pub file: PathBuf,
    /// Give up above this palette size.
    #[arg(long)]
    pub max_k: Option<Color>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct LemmaArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub k: Color,
    /// Also decide whether the graph is k-critical.
    #[arg(long)]
    pub certify: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct DischargeArgs {
    pub file: PathBuf,
    #[arg(long, value_parser = RuleSet::from_str)]
    pub rules: RuleSet,
    /// Produce the negative-vertex report (requires mad below the threshold).
    #[arg(long)]
    pub report: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 7)]
    pub n_max: usize,
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub kind: ExperimentKind,
    /// Key-value file with defaults for the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub move_budget: Option<usize>,
    #[arg(long)]
    pub no_fallback: bool,
    #[arg(long)]
    pub sequential: bool,
    /// Also write the report here.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    aecolor::io::parse_edge_list(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Color(a) => commands::color(&a),
        Command::Check(a) => commands::check(&a),
        Command::ChiA(a) => commands::chi_a(&a),
        Command::Mad(a) => commands::mad(&a.file),
        Command::Lemmas(a) => commands::lemmas(&a),
        Command::Discharge(a) => commands::discharge(&a),
        Command::CriticalSweep(a) => commands::critical_sweep(&a),
        Command::Experiment(a) => commands::experiment(&a),
        Command::Generate(a) => commands::generate(&a),
    }
}
