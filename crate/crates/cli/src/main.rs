//! `popsales` command-line front end.

mod commands;
mod config;
mod data;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;

/// Bad invocation or configuration (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser, Debug)]
#[command(name = "popsales", version, about = "Simulate, calibrate and diagnose weekly record-sales models")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration (see `config-template`).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Overrides `seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Overrides `outputs`.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Constant release hazard and log-normal peaks.
    #[arg(long, global = true, conflicts_with = "nonstationary")]
    stationary: bool,

    /// Seasonal release hazard and peak memory.
    #[arg(long, global = true)]
    nonstationary: bool,

    /// Overrides `analysis.max_lag`.
    #[arg(long, global = true, value_name = "LAGS")]
    max_lag: Option<usize>,

    /// Overrides `analysis.grid`, e.g. "1:50:50,0:100:41".
    #[arg(long, global = true, value_name = "GRID")]
    grid: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct DataArgs {
    /// Chart file (artist_id,year,week,sales_units[,threshold]) or exported panel.
    pub data: PathBuf,

    /// Fold week-53 rows into week 52 instead of rejecting them.
    #[arg(long)]
    pub merge_week53: bool,

    /// Chart precision in copies.
    #[arg(long, default_value_t = 100)]
    pub precision: u64,

    /// Censor rows below the file's `threshold` column.
    #[arg(long)]
    pub apply_threshold: bool,

    /// Regime labels (artist_id,year,week,regime), e.g. `regimes.csv` from `simulate`.
    /// Without it, labels are derived from chart presence.
    #[arg(long, value_name = "FILE")]
    pub labels: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate a cohort and write trajectories, regimes and events.
    Simulate,
    /// Calibrate model parameters from data.
    Estimate {
        #[command(flatten)]
        data: DataArgs,
        /// Event log (`events.csv` from `simulate`) for the singles-per-album fit.
        #[arg(long, value_name = "FILE")]
        events: Option<PathBuf>,
    },
    /// ACF, periodogram, week-of-year aggregate and release intervals of data.
    Analyze {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Correlation matrix, minimum spanning tree and single-linkage dendrogram.
    Cluster {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Same diagnostics on data and on a model ensemble, side by side.
    Compare {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Print the documented configuration file with default values.
    ConfigTemplate,
}

fn load_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.outputs = out.clone();
    }
    if cli.stationary {
        cfg.cohort.nonstationary = false;
    }
    if cli.nonstationary {
        cfg.cohort.nonstationary = true;
    }
    if let Some(lag) = cli.max_lag {
        cfg.analysis.max_lag = lag;
    }
    if let Some(grid) = &cli.grid {
        cfg.analysis.grid = grid.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Command::ConfigTemplate = cli.command {
        print!("{}", config::TEMPLATE);
        return Ok(());
    }
    let cfg = load_config(&cli)?;
    match &cli.command {
        Command::Simulate => commands::simulate::run(&cfg),
        Command::Estimate { data, events } => commands::estimate::run(&cfg, data, events.as_deref()),
        Command::Analyze { data } => commands::analyze::run(&cfg, data),
        Command::Cluster { data } => commands::cluster::run(&cfg, data),
        Command::Compare { data } => commands::compare::run(&cfg, data),
        Command::ConfigTemplate => unreachable!("handled above"),
    }
}

/// 2 validation, 3 data, 4 internal invariant.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<UsageError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<popsales::Error>() {
            return match e {
                popsales::Error::Invariant(_) => 4,
                e if e.is_validation() => 2,
                _ => 3,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 3;
        }
    }
    4
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
