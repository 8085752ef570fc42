use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod error;

use config::{CfFormula, DensityFormula, Only, PartialParams, RunConfig};
use error::CliError;

/// Simulate random flights with drift and evaluate their closed-form laws.
#[derive(Debug, Parser)]
#[command(name = "driftflight", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Ambient dimension.
    #[arg(long)]
    d: Option<usize>,
    /// Projection dimension.
    #[arg(long)]
    m: Option<usize>,
    /// Number of direction changes.
    #[arg(long)]
    n: Option<usize>,
    /// Drift exponent.
    #[arg(long)]
    nu: Option<f64>,
    /// Speed.
    #[arg(long)]
    c: Option<f64>,
    /// Time horizon.
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of simulated flights.
    #[arg(long)]
    count: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads. Output does not depend on this.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Lower grid corner, one value or one per axis.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    min: Option<Vec<f64>>,
    /// Upper grid corner.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    max: Option<Vec<f64>>,
    /// Grid spacing.
    #[arg(long, value_delimiter = ',')]
    step: Option<Vec<f64>>,
    /// Points per axis when no step is given.
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate flights and write final positions.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Also write every breakpoint to this file.
        #[arg(long)]
        trajectories: Option<PathBuf>,
    },
    /// Evaluate a density on a grid.
    Density {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum)]
        formula: Option<DensityFormula>,
    },
    /// Evaluate a characteristic function on a grid of frequencies.
    Cf {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum)]
        formula: Option<CfFormula>,
    },
    /// Radial CDF of the projection.
    Cdf {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Radial moments, closed form and Monte Carlo.
    Moments {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<u32>>,
    },
    /// Density of the projection with a fractional-Poisson number of changes.
    Mixture {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
        /// Event rate.
        #[arg(long)]
        lambda: Option<f64>,
        /// Truncation of the mixture sum.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Run the validation suite and write its JSON report.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        only: Option<Only>,
    },
}

fn flags(common: &Common) -> RunConfig {
    RunConfig {
        params: PartialParams { d: common.d, m: common.m, n: common.n, nu: common.nu, c: common.c, t: common.t },
        seed: common.seed,
        count: common.count,
        out: common.out.clone(),
        ..Default::default()
    }
}

fn with_grid(mut cfg: RunConfig, g: &GridArgs) -> RunConfig {
    cfg.min = g.min.clone();
    cfg.max = g.max.clone();
    cfg.step = g.step.clone();
    cfg.points = g.points;
    cfg
}

fn name<T: clap::ValueEnum>(v: &Option<T>) -> Option<String> {
    v.as_ref().and_then(|v| v.to_possible_value()).map(|p| p.get_name().to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (common, cmd_flags, action): (&Common, RunConfig, fn(&RunConfig) -> Result<(), CliError>) = match &cli.command {
        Command::Simulate { common, trajectories } => {
            let mut f = flags(common);
            f.trajectories = trajectories.clone();
            (common, f, commands::simulate)
        }
        Command::Density { common, grid, formula } => {
            let mut f = with_grid(flags(common), grid);
            f.formula = name(formula);
            (common, f, commands::density)
        }
        Command::Cf { common, grid, formula } => {
            let mut f = with_grid(flags(common), grid);
            f.formula = name(formula);
            (common, f, commands::cf)
        }
        Command::Cdf { common, grid } => (common, with_grid(flags(common), grid), commands::cdf),
        Command::Moments { common, orders } => {
            let mut f = flags(common);
            f.orders = orders.clone();
            (common, f, commands::moments)
        }
        Command::Mixture { common, grid, lambda, n_max } => {
            let mut f = with_grid(flags(common), grid);
            f.lambda = *lambda;
            f.n_max = *n_max;
            (common, f, commands::mixture)
        }
        Command::Validate { common, only } => {
            let mut f = flags(common);
            f.only = *only;
            (common, f, commands::validate)
        }
    };
    if let Some(k) = common.threads {
        if k == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let file = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    action(&cmd_flags.over(file))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("driftflight: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
