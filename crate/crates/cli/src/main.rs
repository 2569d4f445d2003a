//! `dualpolar` — polar spaces, dual polar graphs and resolving sets from the
//! command line.
//!
//! Exit codes: 0 success, 1 failed check, 2 invalid parameters or input,
//! 3 budget exceeded, 4 critical invariant violation.

mod commands;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dualpolar::Error;

#[derive(Parser)]
#[command(
    name = "dualpolar",
    version,
    about = "Classical polar spaces: enumeration, exact rank, resolving sets"
)]
struct Cli {
    /// Worker count for pairwise checks and subset search.  Output is
    /// byte-identical for every value.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Minimize {
    None,
    Greedy,
    Exact,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every closed-form parameter of an instance (no enumeration).
    Formulas {
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate an instance and write its artifact files.
    Build {
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        /// Output directory for points, generators, edges and incidence.
        #[arg(long)]
        out: PathBuf,
    },
    /// Construct, verify and optionally minimize a resolving set.
    Resolve {
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Minimize::None)]
        minimize: Minimize,
        /// Write the resolving set as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full invariant battery and emit one CSV row per check.
    VerifyAll {
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        /// Check the distance law against this edge-list file instead of the
        /// computed dual polar graph.
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch formula/enumeration table over parameter grids.
    Table {
        /// Grid selector `family:qmin..qmax:dmin..dmax`; repeatable.
        /// Invalid field orders inside the range are skipped.
        #[arg(long, required = true)]
        grid: Vec<String>,
        /// Enumerate (rank and resolving columns) only when the generator
        /// count is at most this.
        #[arg(long, default_value_t = 500)]
        max_generators: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::Unsupported(_) | Error::Parse(_) | Error::Io(_) => 2,
        Error::BudgetExceeded { .. } | Error::SearchBudget(_) => 3,
        Error::InvariantViolation(_) => 4,
    }
}

fn main() {
    let cli = Cli::parse();
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        std::process::exit(2);
    }
    let outcome = match cli.command {
        Command::Formulas {
            family,
            q,
            d,
            format,
            out,
        } => commands::cmd_formulas(&family, q, d, format, out.as_deref()),
        Command::Build { family, q, d, out } => commands::cmd_build(&family, q, d, &out),
        Command::Resolve {
            family,
            q,
            d,
            minimize,
            out,
        } => commands::cmd_resolve(&family, q, d, minimize, out.as_deref()),
        Command::VerifyAll {
            family,
            q,
            d,
            edges,
            out,
        } => commands::cmd_verify_all(&family, q, d, edges.as_deref(), out.as_deref()),
        Command::Table {
            grid,
            max_generators,
            out,
        } => commands::cmd_table(&grid, max_generators, out.as_deref()),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
