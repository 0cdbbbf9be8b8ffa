//! `haruspex`: enumerate polygons, reconstruct `H_n(x)`, reduce polygons to
//! section-minimal form, and run the 2-4-2 recurrence and diagnostics.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Input(_) | CliError::Io(_) => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "haruspex", version, about = "Anisotropic self-avoiding polygon toolkit")]
pub struct Cli {
    /// Directory for cached series tables and reconstructed H_n.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Wall-clock limit for long computations.
    #[arg(long, global = true)]
    pub budget_seconds: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count polygons by horizontal and vertical half-perimeter.
    Enumerate {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        m_max: u32,
        /// Exact row profile, top row first, e.g. 2,4,2.
        #[arg(long, value_delimiter = ',')]
        profile: Option<Vec<u32>>,
    },
    /// Reconstruct H_n(x) from enumerated counts and the denominator bound.
    Hn {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = haruspex_core::enumerator::DEFAULT_GUARD)]
        guard: usize,
    },
    /// Decompose polygons and reduce them to section-minimal form.
    Reduce { file: PathBuf },
    /// Compare the building-block formula with a brute-force census.
    Blocks {
        #[arg(long, default_value_t = 6)]
        max_row_length: u32,
        #[arg(long, default_value_t = 12)]
        max_hhp: u32,
    },
    /// Run the 2-4-2 recurrence for n = 1..=n_max.
    Recurrence {
        #[arg(long)]
        n_max: u32,
    },
    /// Build the denominator ledger and the solvability report.
    Diagnose {
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        /// Extend the ledger past n_max with the published denominators.
        #[arg(long)]
        published: bool,
    },
}

pub struct Context {
    pub cache: Option<cache::Cache>,
    pub format: Format,
    pub deadline: Option<Instant>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Context {
        cache: cli.cache_dir.as_deref().map(cache::Cache::new),
        format: cli.format,
        deadline: cli
            .budget_seconds
            .map(|s| Instant::now() + Duration::from_secs(s)),
    };
    match commands::run(&cli.command, &ctx) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("haruspex: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
