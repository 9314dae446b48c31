use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod failure;
mod range;

use failure::Failure;
use range::OrderRange;

/// Wiener index tools for 2-connected graphs.
#[derive(Debug, Parser)]
#[command(name = "wiener", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Internal,
    Labeled,
}

#[derive(Debug, Clone, Args)]
struct Workers {
    /// Enumeration worker threads
    #[arg(long, env = "WIENER_WORKERS", default_value_t = 1)]
    workers: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance invariants of each graph in a graph6 stream
    Compute {
        /// graph6 file, or - for stdin
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the graph6 encoding of a named construction, e.g. theta:n=6,p=2,q=2
    Construct {
        family: String,
        /// Relabel canonically before encoding
        #[arg(long)]
        canonical: bool,
    },
    /// Stream every 2-connected graph of one order as graph6
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Internal)]
        backend: BackendArg,
        #[arg(long)]
        min_edges: Option<usize>,
        #[arg(long)]
        max_edges: Option<usize>,
        /// Stop after this many graphs
        #[arg(long)]
        max_graphs: Option<u64>,
        /// Allow orders of 11 and above
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        workers: Workers,
    },
    /// Keep the 2-connected graphs of a graph6 stream
    Filter {
        #[arg(default_value = "-")]
        input: String,
        /// Keep only graphs of this order
        #[arg(long)]
        n: Option<usize>,
        /// Also keep graphs that are not 2-connected
        #[arg(long)]
        keep_separable: bool,
        /// Keep isomorphic repeats
        #[arg(long)]
        no_dedup: bool,
        /// Stop at the first malformed line
        #[arg(long)]
        strict: bool,
    },
    /// Top graphs of one order by Wiener index
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        top: usize,
        /// Rank a graph6 stream (file or -) instead of enumerating
        #[arg(long)]
        input: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        workers: Workers,
    },
    /// Run a claim set over a range of orders
    Verify {
        #[arg(value_enum)]
        set: ClaimSet,
        /// Orders, e.g. 4..9, 4..=9 or 7
        #[arg(long)]
        n: Option<OrderRange>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Enumerate orders of 11 and above
        #[arg(long)]
        extended: bool,
        /// Largest order checked by the closed-form sweep
        #[arg(long, default_value_t = 200)]
        formula_max: usize,
        #[command(flatten)]
        workers: Workers,
    },
    /// Closed forms against BFS over a range of orders
    Formulas {
        #[arg(long, default_value = "3..20")]
        n: OrderRange,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClaimSet {
    Tables,
    Theorem,
    Lemmas,
    #[value(alias = "chords")]
    Case2,
    Props,
    Conjecture,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            if !message.is_empty() {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}
