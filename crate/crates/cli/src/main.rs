//! Batch command-line surface over the emzv library: every verification and
//! computation is exposed as a subcommand emitting a machine-readable table
//! (JSON lines, CSV, or TSV) on stdout.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when an asserted
//! verification fails (the failing case is identified on stderr).

mod commands;
mod output;
mod par;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use output::OutputFormat;

#[derive(Parser)]
#[command(
    name = "emzv",
    version,
    about = "Exact and numeric tables for A-elliptic multiple zeta values"
)]
struct Cli {
    /// Output format for the table on stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-weight dimension table (lengths one and two; three on request).
    Dims {
        #[arg(long)]
        max_weight: u32,
        /// Largest length to include (1, 2, or 3).
        #[arg(long, default_value_t = 2)]
        lengths: u32,
        /// Truncation order for the rank computations (default: weight + 20
        /// per weight; stability is rechecked at order + 10 either way).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Dimension (and optionally a kernel basis) of the Fay-shuffle space.
    FayShuffle {
        weight: u32,
        /// Also emit the reduced-echelon kernel basis.
        #[arg(long)]
        basis: bool,
    },
    /// Hilbert series coefficients against the polynomial-space dimensions.
    Hilbert {
        #[arg(long, default_value_t = 60)]
        max: usize,
    },
    /// Determinant of the binomial matrix against (2n+1)!!.
    BinomDet { n: u32 },
    /// LU factorization of the binomial matrix, checked exactly.
    VerifyLu { n: u32 },
    /// Rank of the derivative coefficient matrix at an odd weight.
    RankC { weight: u32 },
    /// Reflection, shuffle, and Fay relation checks at one weight.
    VerifyRelations {
        weight: u32,
        /// Truncation order (default: weight + 20).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Exact q-expansion of one value, as coefficient triples.
    Qexp {
        /// Multi-index, e.g. "0,3".
        index: String,
        /// Truncation order (default: weight + 20).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Numeric cross-validation of iterated integrals against q-expansions,
    /// or pointwise form-property checks with --properties.
    NumericCheck {
        /// Point of the upper half-plane, e.g. "i" or "0.5+1.5i".
        #[arg(long, default_value = "i")]
        tau: String,
        /// Indices to cross-validate, e.g. --indices 0,3 --indices 2,2.
        #[arg(long = "indices")]
        indices: Vec<String>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Truncation order of the compared series (default 40).
        #[arg(long, default_value_t = 40)]
        order: usize,
        /// Check double periodicity, parity, Fay, and the S-transformation
        /// at random non-lattice points instead of cross-validating.
        #[arg(long)]
        properties: bool,
    },
    /// Run the full verification suite and summarize pass/fail.
    VerifyAll {
        /// Comma-separated criterion ids to run (default: all).
        #[arg(long)]
        criteria: Option<String>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => match err.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{err}");
                std::process::exit(0);
            }
            _ => {
                eprint!("{err}");
                std::process::exit(1);
            }
        },
    };
    match commands::run(cli.command, cli.format) {
        Ok(true) => std::process::exit(0),
        Ok(false) => std::process::exit(2),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
    }
}
