//! `loh`: evaluate incongruity theories, run learners and scenarios, and
//! check aggregators from the command line.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use loh::aggregation::ReductionMode;

#[derive(Parser)]
#[command(name = "loh", version, about = "Incongruity evaluation, learners and scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Total incongruity of a hypothesis against a dataset.
    Eval(EvalArgs),
    /// Run a learner on a dataset.
    Learn(LearnArgs),
    /// Run one of the bundled data-analysis scenarios.
    Scenario(ScenarioArgs),
    /// Aggregate a list of numbers.
    Agg(AggArgs),
    /// Randomized check of the proper-aggregation axioms.
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    BitExact,
    Fast,
}

impl From<Mode> for ReductionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::BitExact => ReductionMode::BitExact,
            Mode::Fast => ReductionMode::Fast,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Mode::BitExact)]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct EvalArgs {
    /// Dataset CSV with columns x1..xn, y and optionally mod.
    #[arg(long)]
    pub data: PathBuf,
    /// Theory JSON (inline or file) or a registered theory name.
    #[arg(long)]
    pub theory: String,
    /// Hypothesis JSON (inline or file), or a CSV of hypothetical instances.
    /// Defaults to the hyp rows of the dataset.
    #[arg(long)]
    pub hypothesis: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct LearnArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// Learner name, or full learner JSON (inline or file).
    #[arg(long)]
    pub learner: String,
    /// Learner parameters as JSON when --learner is a bare name.
    #[arg(long)]
    pub params: Option<String>,
    /// Query point, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub query: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    Scales,
    Dependence,
    Itinerary,
    Witnesses,
}

#[derive(Args, Debug, Serialize)]
pub struct ScenarioArgs {
    #[arg(long, value_enum)]
    pub scenario: ScenarioKind,
    /// Scenario CSV: readings, daily log or sightings.
    #[arg(long)]
    pub data: PathBuf,
    /// Travel time CSV for itinerary and witnesses.
    #[arg(long)]
    pub travel: Option<PathBuf>,
    /// Aggregator id for scales.
    #[arg(long, default_value = "percentile")]
    pub agg: String,
    #[arg(long, default_value_t = 80.0)]
    pub p: f64,
    /// Minutes.
    #[arg(long, default_value_t = 5.0)]
    pub window: f64,
    /// Pounds.
    #[arg(long, default_value_t = 1.0)]
    pub tol: f64,
    /// Calories.
    #[arg(long, default_value_t = 100.0)]
    pub x_gap: f64,
    /// Pounds.
    #[arg(long, default_value_t = 1.0)]
    pub y_tol: f64,
    /// Only compare days with similar intake.
    #[arg(long)]
    pub no_monotone: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct AggArgs {
    /// mean, rms, max, geomean, median or percentile.
    #[arg(long)]
    pub id: String,
    #[arg(long)]
    pub p: Option<f64>,
    /// Comma-separated numbers.
    #[arg(long, allow_hyphen_values = true)]
    pub values: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct CheckArgs {
    /// Aggregator id, or min_minus_one for the deliberately improper one.
    #[arg(long)]
    pub agg: String,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 50)]
    pub size_max: usize,
    /// Multisets for the order-invariance check of recursive aggregators.
    #[arg(long, default_value_t = 50)]
    pub multisets: usize,
    #[arg(long, default_value_t = 50)]
    pub permutations: usize,
    #[command(flatten)]
    pub common: Common,
}

/// Why a command did not succeed, in exit-code order.
#[derive(Debug)]
pub enum Failure {
    Counterexample,
    Schema(String),
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Counterexample => 1,
            Failure::Schema(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }
}

impl From<loh::Error> for Failure {
    fn from(e: loh::Error) -> Self {
        if e.is_schema_error() {
            Failure::Schema(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => commands::eval(a),
        Command::Learn(a) => commands::learn(a),
        Command::Scenario(a) => commands::scenario(a),
        Command::Agg(a) => commands::agg(a),
        Command::Check(a) => commands::check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Schema(m) | Failure::Numeric(m) => eprintln!("error: {m}"),
                Failure::Counterexample => eprintln!("counterexample found"),
            }
            ExitCode::from(f.code())
        }
    }
}
