//! Batch front end for the `muord` toolkit.
//!
//! Every subcommand reads one JSON input file, runs a single operation and
//! prints either an aligned table or a JSON document that parses back into
//! [`Output`].

mod command;
mod input;
mod output;
mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use command::{execute, CliError, Limits, RunConfig};
pub use input::*;
pub use output::*;
pub use table::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Newton polygon of every orbit.
    Newton,
    /// Slopes of the dual orbit against the reflected polygon.
    Dual,
    /// Signature and Levi block sizes per embedding.
    Levi,
    /// Weight of the mu-ordinary Hasse invariant.
    Hasse,
    /// Ranks of the graded pieces per orbit.
    Grranks,
    /// Building blocks of the local moduli.
    Cascade,
    /// Canonical parameter counts.
    Params,
    /// Branching of an irreducible to a block Levi.
    Restrict,
    /// Positivity, symmetry and degrees of a dominant weight.
    Classify,
    /// Whether a Levi weight is simple.
    Simple,
    /// Congruence of two characters on the units of Z/p^m.
    Charcong,
    /// Apply a theta operator to an expansion.
    Theta,
    /// Check the theta congruence for two simple weights.
    Thetacong,
    /// Moments of a measure against simple weights.
    Moments,
    /// Abstract Kummer congruence for a binomial seed.
    Kummer,
    /// Run the invariant suites.
    Proptest {
        /// Run a single suite (1-11).
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Debug, Parser)]
#[command(name = "muord", version, about = "Mu-ordinary unitary data, weights and theta operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input JSON file; `-` reads standard input.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed of the randomized suites.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub max_e: Option<usize>,
    #[arg(long, global = true)]
    pub max_n: Option<u32>,
    /// Precision exponent M of p-adic coefficients.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Total degree bound of expansions.
    #[arg(long, global = true)]
    pub degree: Option<u32>,
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            command: self.command,
            input: self.input.clone(),
            format: self.format,
            seed: self.seed,
            limits: Limits {
                max_e: self.max_e,
                max_n: self.max_n,
                degree: self.degree,
                precision: self.precision,
            },
        }
    }
}

/// Runs `cfg`, writes the report or error and returns the exit status:
/// 0 on success, 1 on a domain error, 2 on a parse error and 3 when a
/// suite fails.
pub fn run(cfg: &RunConfig, out: &mut impl Write, err: &mut impl Write) -> i32 {
    match execute(cfg) {
        Ok(report) => {
            let text = match cfg.format {
                Format::Table => render(&report),
                Format::Machine => serde_json::to_string(&report).expect("reports serialize"),
            };
            let _ = writeln!(out, "{}", text.trim_end());
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Some(pre) = e.precondition() {
                let _ = writeln!(err, "precondition: {pre}");
            }
            e.exit_code()
        }
    }
}
