//! `quiverlab`: mutation, cluster characters, silting pairs, stability
//! pictures, maximal green sequences and barcodes from the shell.
//!
//! Exit status is 0 on success, 1 when the computation itself fails and 2
//! when the command line is malformed.

mod commands;
mod input;

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use input::QuiverArgs;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    pub fn domain(e: impl Display) -> Self {
        Failure::Domain(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "quiverlab", version, about = "Quiver mutation and cluster characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a quiver or exchange matrix and print the result as JSON
    Mutate {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Directions, applied left to right
        #[arg(long = "at", value_delimiter = ',', required = true)]
        at: Vec<usize>,
    },
    /// Mutate the initial seed and print the final cluster, one variable per line
    SeedWalk {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long = "at", value_delimiter = ',')]
        at: Vec<usize>,
        /// Print sums of Laurent monomials instead of fractions
        #[arg(long)]
        flat: bool,
    },
    /// Explore the exchange graph and print its size
    ExchangeGraph {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, default_value_t = 10_000)]
        max_nodes: usize,
        #[arg(long, default_value_t = 64)]
        max_depth: usize,
        /// Count ordered clusters instead of unordered ones
        #[arg(long)]
        labeled: bool,
        /// Write Graphviz text to this file (`-` for standard output)
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Cluster character of a module literal such as `M[1,2]`, `P[2]` or `P[3][1]`
    Char {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, required_unless_present = "table")]
        module: Option<String>,
        /// Print the whole character table as JSON (type A only)
        #[arg(long, conflicts_with = "module")]
        table: bool,
        #[arg(long)]
        flat: bool,
    },
    /// List silting pairs of a type-A quiver
    Silting {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Only pairs without shifted projectives
        #[arg(long)]
        tilting: bool,
        #[arg(long)]
        json: bool,
        /// Print the compatibility graph as JSON instead
        #[arg(long, conflicts_with_all = ["tilting", "complete"])]
        graph: bool,
        /// Pair literal `T=[...];P=[...]` to exchange a summand of
        #[arg(long, requires = "remove")]
        complete: Option<String>,
        /// Summand to remove from `--complete`
        #[arg(long, requires = "complete")]
        remove: Option<String>,
    },
    /// Count chambers and locate stability parameters
    Chambers {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Stability parameter such as `1,-2` or `1/2,-1`; repeatable
        #[arg(long, allow_hyphen_values = true)]
        theta: Vec<String>,
    },
    /// Draw walls and g-vectors as SVG (rank 2 and 3)
    StabilitySvg {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
        #[arg(long)]
        no_labels: bool,
        #[arg(long, default_value_t = 256)]
        segments: usize,
    },
    /// Enumerate maximal green sequences, one per line
    Mgs {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, default_value_t = 64)]
        max_depth: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
        /// Print the framed matrices along each sequence
        #[arg(long)]
        trace: bool,
    },
    /// Stable barcode of a dimension vector on the linear quiver
    Barcode {
        /// Dimension vector such as `3,4,2`
        #[arg(allow_hyphen_values = true)]
        dims: String,
        /// Also write an SVG rendering (`-` for standard output)
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Run the session service for the browser explorer
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Directory of static files served next to the API
        #[arg(long)]
        assets: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<String, Failure> {
    use Command::*;
    match cli.command {
        Mutate { quiver, at } => commands::mutate(&quiver.resolve()?, &at),
        SeedWalk { quiver, at, flat } => commands::seed_walk(&quiver.resolve()?, &at, flat),
        ExchangeGraph {
            quiver,
            max_nodes,
            max_depth,
            labeled,
            dot,
        } => commands::exchange_graph(&quiver.resolve()?, max_nodes, max_depth, labeled, dot.as_deref()),
        Char {
            quiver,
            module,
            table,
            flat,
        } => commands::character(&quiver.resolve()?, module.as_deref(), table, flat),
        Silting {
            quiver,
            tilting,
            json,
            graph,
            complete,
            remove,
        } => {
            let q = quiver.resolve()?;
            match (complete, remove) {
                (Some(pair), Some(m)) => commands::exchange(&q, &pair, &m),
                _ if graph => commands::compatibility(&q),
                _ => commands::silting(&q, tilting, json),
            }
        }
        Chambers { quiver, theta } => commands::chambers(&quiver.resolve()?, &theta),
        StabilitySvg {
            quiver,
            output,
            no_labels,
            segments,
        } => commands::stability_svg(&quiver.resolve()?, output.as_deref(), !no_labels, segments),
        Mgs {
            quiver,
            max_depth,
            max_states,
            trace,
        } => commands::mgs(&quiver.resolve()?, max_depth, max_states, trace),
        Barcode { dims, svg } => commands::barcode(&dims, svg.as_deref()),
        Serve { host, port, assets } => commands::serve(&host, port, assets.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
