//! `positroid` command-line front end.
//!
//! Exit codes: 0 when the answer is yes/verified, 1 when it is no/falsified, 2 on errors.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cache::Cache;

#[derive(Parser, Debug)]
#[command(name = "positroid", version, about = "Positroids, Grassmann necklaces, shifts and the quotient poset")]
struct Cli {
    /// Largest ground set accepted by enumerating commands.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u8).range(1..=16))]
    n_cap: u8,
    /// Allow long computations (census with n >= 9, posets with n >= 8).
    #[arg(long, global = true)]
    long_running: bool,
    /// Directory for cached results; POSITROID_CACHE_DIR takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Perm,
    Necklace,
    Bases,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert between decorated permutations, necklaces and basis lists.
    Convert {
        #[arg(long, value_enum)]
        from: Kind,
        #[arg(long, value_enum)]
        to: Kind,
        /// Ground set size; required for basis lists such as "{}" or "1,3;2,4".
        #[arg(long)]
        n: Option<usize>,
        input: String,
    },
    /// Test whether the positroid of LOWER is a quotient of that of UPPER, listing flags.
    Quotient { lower: String, upper: String },
    /// Apply the freeze/shift/decorate move.
    Shift {
        perm: String,
        /// Frozen values, e.g. "1,2" or "9-1,6".
        #[arg(default_value = "")]
        frozen: String,
        #[arg(long, value_enum, default_value_t = Side::Left)]
        direction: Side,
    },
    /// Circuits of a positroid, or the shifted-uniform formula checked against brute force.
    Circuits {
        /// Decorated permutation whose positroid circuits are listed.
        #[arg(required_unless_present_all = ["k", "n"])]
        perm: Option<String>,
        #[arg(long, requires = "n", conflicts_with = "perm")]
        k: Option<usize>,
        #[arg(long, requires = "k")]
        n: Option<usize>,
        #[arg(long, default_value = "")]
        frozen: String,
    },
    /// Quotients of U_{k,n} among rank k-1 positroids, and how many are left shifts.
    Census { n: usize, k: Option<usize> },
    /// The poset of positroid quotients on [n].
    Poset { n: usize },
    /// Möbius value of the poset on [n].
    Mobius { n: usize },
    /// Necklace containment, shift witnesses and closure checks on the poset on [n].
    Conjectures { n: usize },
    /// Vandermonde realization of U_{k,n} with exact minors.
    Realize {
        k: usize,
        n: usize,
        /// Increasing positive points, integers or fractions like "1/2"; default 1..n.
        #[arg(long)]
        points: Option<String>,
    },
}

pub struct Config {
    pub n_cap: usize,
    pub long_running: bool,
    pub format: Format,
    pub cache: Cache,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let cache_dir = std::env::var_os("POSITROID_CACHE_DIR").map(PathBuf::from).or(cli.cache_dir);
    let config = Config {
        n_cap: usize::from(cli.n_cap),
        long_running: cli.long_running,
        format: cli.format,
        cache: Cache::new(cache_dir),
    };
    let result = match cli.command {
        Command::Convert { from, to, n, input } => commands::convert(&config, from, to, n, &input),
        Command::Quotient { lower, upper } => commands::quotient(&config, &lower, &upper),
        Command::Shift { perm, frozen, direction } => commands::shift(&config, &perm, &frozen, direction),
        Command::Circuits { perm, k, n, frozen } => commands::circuits(&config, perm.as_deref(), k.zip(n), &frozen),
        Command::Census { n, k } => commands::census(&config, n, k),
        Command::Poset { n } => commands::poset(&config, n),
        Command::Mobius { n } => commands::mobius(&config, n),
        Command::Conjectures { n } => commands::conjectures(&config, n),
        Command::Realize { k, n, points } => commands::realize(&config, k, n, points.as_deref()),
    };
    match result {
        Ok(output) => {
            print!("{}", output.text);
            ExitCode::from(if output.verdict { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
