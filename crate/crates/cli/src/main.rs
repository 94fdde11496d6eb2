//! `dahakit` command-line driver.
//!
//! Exit codes: 0 success, 2 usage, 3 constraint violation, 4 I/O or parse
//! error, 5 verification failure, 6 classification failure, 7 internal error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dahakit::params::Parity;
use dahakit::scalar::Backend;

#[derive(Parser, Debug)]
#[command(name = "dahakit", version, about = "Finite-dimensional modules of the universal DAHA of type (C1v, C1)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Scalar backend; file inputs are auto-detected when omitted.
    #[arg(long, global = true, value_parser = parse_backend)]
    pub backend: Option<Backend>,

    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build E(k) or O(k) and emit the module as JSON.
    Construct(ParamArgs),
    /// Check the defining relations, central character and ladder identities of a module file.
    Verify { module: PathBuf },
    /// Burnside closure dimension of a module file.
    Irreducible { module: PathBuf },
    /// Recover twist and parameters of an irreducible module file.
    Classify { module: PathBuf },
    /// Search for an invertible intertwiner between two module files.
    Intertwiner { from: PathBuf, to: PathBuf },
    /// Twist a module file by an element of Z/4.
    Twist {
        module: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        by: i64,
    },
    /// Compute the L-matrix by one route or all of them.
    Lmatrix {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = RouteArg::All)]
        route: RouteArg,
    },
    /// Sign-inversion orbit of an even-family quadruple and its canonical representative.
    Orbit(ParamArgs),
    /// Compare the irreducibility criterion with Burnside closure over a random grid.
    Sweep {
        #[arg(long, value_parser = parse_parity)]
        parity: Parity,
        /// Restrict to one d; defaults to the three smallest valid values.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 20)]
        grid: usize,
        #[arg(long, default_value_t = dahakit::suite::DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = dahakit::suite::DEFAULT_SEED)]
        seed: u64,
        /// Random samples per parity; 0 runs the fixed examples only.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long)]
    pub q: String,
    /// k0,k1,k2,k3 as exact scalars.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub k: Vec<String>,
    #[arg(long)]
    pub d: usize,
    /// Defaults to the family matching d (odd d: even, even d: odd).
    #[arg(long, value_parser = parse_parity)]
    pub parity: Option<Parity>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteArg {
    Operator,
    Recurrence,
    Closed,
    All,
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e: dahakit::Error| e.to_string())
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    s.parse().map_err(|e: dahakit::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
