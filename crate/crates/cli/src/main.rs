use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spin_svetlichny::{SignAssignment, SpinJ, DEFAULT_DIMENSION_GUARD};

mod commands;
mod error;
mod output;
mod range;
mod verify;

use error::CliError;
use range::{PartyRange, SpinRange};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Svetlichny-inequality violation for N parties of spin j.
#[derive(Debug, Parser)]
#[command(name = "svetlichny", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Largest state dimension (2j+1)^N the matrix oracle may allocate.
    #[arg(long, global = true, default_value_t = DEFAULT_DIMENSION_GUARD)]
    dimension_guard: usize,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical, quantum and fixed-sign bounds.
    Bounds {
        /// Party count or inclusive range `a..b`.
        #[arg(long)]
        n: PartyRange,
    },
    /// Build the optimal phase scheme and evaluate it.
    Scheme {
        #[arg(long)]
        n: usize,
        /// Spin as `1/2`, `1`, `3/2`, ...
        #[arg(long)]
        spin: SpinJ,
        /// m=0 signs for integer spin, e.g. `++,++,+-`.
        #[arg(long, conflicts_with = "auto_signs")]
        signs: Option<SignAssignment>,
        /// Pick the m=0 signs by exhaustive search.
        #[arg(long)]
        auto_signs: bool,
        /// Write the scenario JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cross-check against the state-vector oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Evaluate a scenario file.
    Evaluate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// Exhaustive search over the m=0 sign assignments.
    Search {
        #[arg(long)]
        n: usize,
    },
    /// Scheme values over ranges of N and j.
    Sweep {
        #[arg(long)]
        n: PartyRange,
        #[arg(long)]
        spin: SpinRange,
    },
    /// Reproduce every reference value; exit code 4 on any mismatch.
    Verify {
        /// Skip oracle checks above 2^12 amplitudes.
        #[arg(long)]
        quick: bool,
        /// Reference values to check against (defaults to the built-in set).
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Validation(e.to_string()))?;
    }
    let ctx = commands::Context {
        format: cli.format,
        dimension_guard: cli.dimension_guard,
    };
    match cli.command {
        Command::Bounds { n } => commands::bounds(&ctx, n),
        Command::Scheme {
            n,
            spin,
            signs,
            auto_signs,
            out,
            oracle,
        } => commands::scheme(&ctx, n, spin, signs, auto_signs, out.as_deref(), oracle),
        Command::Evaluate { scenario, oracle } => commands::evaluate(&ctx, &scenario, oracle),
        Command::Search { n } => commands::search(&ctx, n),
        Command::Sweep { n, spin } => commands::sweep(&ctx, n, spin),
        Command::Verify { quick, fixtures } => verify::run(&ctx, quick, fixtures.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Verification { report, .. } = &e {
                print!("{report}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
