use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epiroute_core::LowerBoundMode;

#[derive(Debug, Parser)]
#[command(
    name = "epiroute",
    version,
    about = "Delivery ratio of epidemic routing over edge-Markovian dynamic graphs",
    args_override_self = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Delivery ratio from the Markov chain (exact for alpha <= 1, bounds above)
    Analytic(AnalyticArgs),
    /// Parameter sweep over one variable, optionally with Monte Carlo estimates
    Sweep(SweepArgs),
    /// Monte Carlo delivery ratio on sampled dynamic graphs
    Simulate(SimulateArgs),
    /// Estimate edge-Markov parameters from a contact trace
    Estimate(EstimateArgs),
    /// Flood random bundles through a recorded contact trace
    Replay(ReplayArgs),
    /// Write a sampled edge-Markov contact trace in the trace CSV format
    SynthTrace(SynthTraceArgs),
}

/// Comma separated numbers; `a/b` fractions are accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

fn parse_number(item: &str) -> Result<f64, String> {
    let item = item.trim();
    let value = match item.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| format!("invalid number '{item}'"))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| format!("invalid number '{item}'"))?;
            num / den
        }
        None => item
            .parse()
            .map_err(|_| format!("invalid number '{item}'"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("'{item}' is not a finite number"))
    }
}

impl FromStr for FloatList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(parse_number)
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err("empty list".into());
        }
        Ok(FloatList(values))
    }
}

/// Comma separated non-negative integers.
#[derive(Debug, Clone, PartialEq)]
pub struct StepList(pub Vec<u64>);

impl FromStr for StepList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|item| {
                item.trim().parse::<u64>().map_err(|_| {
                    format!(
                        "'{}' is not a non-negative integer number of steps",
                        item.trim()
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(StepList)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundMode {
    Corrected,
    Verbatim,
}

impl From<BoundMode> for LowerBoundMode {
    fn from(mode: BoundMode) -> Self {
        match mode {
            BoundMode::Corrected => LowerBoundMode::Corrected,
            BoundMode::Verbatim => LowerBoundMode::Verbatim,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file, or `-` for standard output
    #[arg(long, default_value = "-")]
    pub out: String,

    /// key=value file whose entries act as flags; explicit flags win
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Number of nodes
    #[arg(long, default_value_t = 20)]
    pub n: usize,

    /// Probability that a down link comes up in one step
    #[arg(long, default_value_t = 0.05)]
    pub p_up: f64,

    /// Probability that an up link goes down in one step
    #[arg(long, default_value_t = 0.5)]
    pub p_down: f64,

    /// Duration of one time step in seconds
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,

    /// Bundle sizes in units of link size
    #[arg(long, default_value = "1")]
    pub alpha: FloatList,

    /// Maximum delays in time steps
    #[arg(long, default_value = "5")]
    pub delay: StepList,

    #[arg(long, value_enum, default_value_t = BoundMode::Corrected)]
    pub lower_bound_mode: BoundMode,
}

#[derive(Debug, Clone, Args)]
pub struct MonteCarloArgs {
    /// Independent runs per estimate
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: u64,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub mc: MonteCarloArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum SweepVariable {
    Alpha,
    Delay,
    #[value(alias = "n-nodes")]
    NNodes,
    #[value(alias = "contact-time")]
    ContactTime,
    Degree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputKind {
    Exact,
    Bounds,
    Montecarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Bundle size 1/8..8 at delays 4, 8, 16
    BundleSize,
    /// Node count 2..40
    NodeCount,
    /// Mean contact time 1..10 steps at fixed degree
    ContactTime,
    /// Mean degree 0.25..6
    Degree,
    /// Maximum delay 1..30
    Delay,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub mc: MonteCarloArgs,
    #[command(flatten)]
    pub output: OutputArgs,

    /// Swept variable; contact_time is the mean contact duration in seconds
    #[arg(long, value_enum, required_unless_present = "preset")]
    pub variable: Option<SweepVariable>,

    #[arg(long, required_unless_present = "preset")]
    pub values: Option<FloatList>,

    /// Result kinds to emit
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "exact,bounds"
    )]
    pub outputs: Vec<OutputKind>,

    /// Predefined sweep; sets variable and values, and alpha/delay unless given
    #[arg(long, value_enum, conflicts_with_all = ["variable", "values"])]
    pub preset: Option<Preset>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct TraceInput {
    /// Contact trace CSV (`time,node_a,node_b`)
    #[arg(long)]
    pub trace: PathBuf,

    /// Sampling period of the trace in seconds
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,

    /// Total node count, when some nodes never appear in the trace
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub input: TraceInput,

    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    #[command(flatten)]
    pub input: TraceInput,

    /// Bundles are injected strictly before this time (seconds)
    #[arg(long, default_value_t = 2000.0)]
    pub horizon: f64,

    /// Seconds between injection batches
    #[arg(long, default_value_t = 15.0)]
    pub interval: f64,

    /// Random source/destination pairs per batch
    #[arg(long, default_value_t = 60)]
    pub pairs: usize,

    #[arg(long, default_value = "1")]
    pub alpha: FloatList,

    /// Maximum delays in seconds (multiples of the sampling period)
    #[arg(long, default_value = "300")]
    pub delay: FloatList,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Add parameters estimated from the trace and the matching analytic values
    #[arg(long)]
    pub with_model: bool,

    #[arg(long, value_enum, default_value_t = BoundMode::Corrected)]
    pub lower_bound_mode: BoundMode,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SynthTraceArgs {
    #[arg(long, default_value_t = 20)]
    pub n: usize,

    #[arg(long, default_value_t = 0.05)]
    pub p_up: f64,

    #[arg(long, default_value_t = 0.5)]
    pub p_down: f64,

    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,

    /// Number of snapshots
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}
