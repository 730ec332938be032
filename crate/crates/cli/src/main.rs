//! `ucc`: checks and generators for union-closed families.
//!
//! Exit codes:
//! - 0: every check passed, or was reported as inapplicable
//! - 1: a checked inequality failed; the offending family is written to
//!   stderr in `.uc` format
//! - 2: usage or I/O error

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ucc",
    version,
    about = "Union-closed family checks and generators"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Absolute tolerance; for `analytic minimize` the refinement tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads; 0 keeps the default pool.
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    /// Write certificates or exported families here.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closure fraction, element frequencies and the frequency bound.
    Check { file: std::path::PathBuf },
    /// Entropy of `A ∪ B`, both entropy bounds and the chain-rule check.
    Entropy {
        file: std::path::PathBuf,
        #[arg(long, default_value_t = ucc_core::entropy::DEFAULT_PAIR_CAP)]
        pair_cap: usize,
    },
    /// Numerical and certified statements about `h`.
    Analytic {
        #[command(subcommand)]
        op: AnalyticOp,
    },
    /// The construction with a small closure fraction and low maximum frequency.
    Example {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Materialise the family and print it in `.uc` format instead of statistics.
        #[arg(long)]
        explicit: bool,
    },
    /// Run every check on all union-closed families over `[n]`, `n <= 4`.
    Enumerate {
        #[arg(long)]
        n: u32,
        /// Skip families containing the empty set.
        #[arg(long)]
        no_empty: bool,
    },
    /// Run every check on a seeded random corpus.
    Fuzz {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum AnalyticOp {
    /// Minimise `h(x²)/(x h(x))` over `(0, 1)`.
    Minimize {
        #[arg(long, default_value_t = 4096)]
        grid: usize,
    },
    /// Evaluate the two-variable inequality on an interior grid.
    Grid {
        #[arg(long, default_value_t = 1000)]
        grid: usize,
    },
    /// Branch-and-bound certificate for `f >= theta` on `[eta, 1-eta]²`.
    Certify {
        #[arg(long, default_value_t = 0.809016)]
        theta: f64,
        #[arg(long, default_value_t = 1e-4)]
        eta: f64,
        #[arg(long, default_value_t = 60)]
        max_depth: u32,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
