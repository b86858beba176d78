//! Command-line front end: argument parsing and the five subcommands.

use std::path::PathBuf;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod report;

/// Solid-state Faraday anomalous-dispersion optical filter simulator.
#[derive(Debug, Parser)]
#[command(name = "fadof", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample transmission, rotation, depths and indices over the detuning grid.
    Spectrum(CommonArgs),
    /// Figures of merit over a (field, length) lattice.
    Sweep(CommonArgs),
    /// Search field and length for maximum peak transmission.
    Optimize(CommonArgs),
    /// Fit line strengths to measured absorption depths.
    Calibrate {
        #[command(flatten)]
        common: CommonArgs,
        /// Absorption samples CSV (detuning_ghz,depth,polarization).
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Compare the closed-form transmission against Jones-matrix propagation.
    OracleCheck(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Run configuration (TOML).
    #[arg(long)]
    pub config: PathBuf,
    /// Output file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Half-width of the detuning grid around line b, GHz.
    #[arg(long)]
    pub grid_span_ghz: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Worker threads (default: available parallelism).
    #[arg(long, env = "FADOF_WORKERS")]
    pub workers: Option<usize>,
    /// Suppress the summary on stderr.
    #[arg(long)]
    pub quiet: bool,
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Io = 1,
    Config = 2,
    Numeric = 3,
    NoSolution = 4,
}

/// Parses `args` (program name first) and runs the selected command.
/// Diagnostics go to stderr; the return value is the process status.
pub fn run<I, T>(args: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Exit::Config } else { Exit::Ok };
        }
    };
    let status = match cli.command {
        Command::Spectrum(args) => commands::spectrum(&args),
        Command::Sweep(args) => commands::sweep(&args),
        Command::Optimize(args) => commands::optimize(&args),
        Command::Calibrate { common, samples } => commands::calibrate(&common, samples.as_deref()),
        Command::OracleCheck(args) => commands::oracle_check(&args),
    };
    match status {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.exit
        }
    }
}
