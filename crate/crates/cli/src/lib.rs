//! Front end for the `brieskorn` binary: argument parsing, dispatch and
//! report rendering. `run` is pure (it returns the streams and exit code)
//! so the binary is a thin wrapper and tests can drive it in-process.

pub mod commands;
pub mod envelope;
pub mod text;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use brieskorn::Window;

pub use envelope::{Body, Input, OutputEnvelope, SCHEMA_VERSION};

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const DEGENERATE: i32 = 2;
    pub const NOT_WELL_DEFINED: i32 = 3;
    pub const CHECK_FAILED: i32 = 4;
    /// Two independent Maslov computations disagreed.
    pub const CROSSCHECK: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] brieskorn::Error),

    #[error("{path}: {message}")]
    File { path: String, message: String },

    #[error("maslov crosscheck mismatch: {0}")]
    Crosscheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(brieskorn::Error::Degenerate) => exit::DEGENERATE,
            CliError::Crosscheck(_) => exit::CROSSCHECK,
            _ => exit::USAGE,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "brieskorn",
    version,
    about = "Contact homology of Brieskorn manifolds"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integral homology of Σ(a_0, …, a_n).
    Homology(ExponentArgs),
    /// Orbit types of the Reeb flow and the index character.
    Orbits(ExponentArgs),
    /// Graded ranks of cylindrical contact homology.
    Ch(ChArgs),
    /// Fold generator counts from saved reports through connected sums.
    Sum(SumArgs),
    /// Check a special sphere and sum copies of it.
    Exotic(ExoticArgs),
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    #[arg(required = true, num_args = 1..)]
    pub exponents: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct ChArgs {
    #[arg(required = true, num_args = 1..)]
    pub exponents: Vec<u64>,

    /// Degree window LO:HI, inclusive. Defaults to two periods from the
    /// extremal degree.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<Window>,

    /// Include the per-orbit contributions in the report.
    #[arg(long)]
    pub provenance: bool,

    /// Recompute every Maslov index from the unitary formula.
    #[arg(long)]
    pub crosscheck: bool,
}

#[derive(Debug, Args)]
pub struct SumArgs {
    /// Envelopes written by `sum` or `ch`.
    #[arg(required = true, num_args = 1..)]
    pub files: Vec<PathBuf>,

    #[arg(long)]
    pub beta_n: u64,

    /// Highest degree kept. Defaults to the smallest cutoff among the inputs.
    #[arg(long, allow_hyphen_values = true)]
    pub cutoff: Option<i64>,
}

#[derive(Debug, Args)]
pub struct ExoticArgs {
    #[arg(long, required = true, num_args = 1..)]
    pub primes: Vec<u64>,

    #[arg(long, default_value_t = 1)]
    pub copies: u64,

    /// Defaults to 2n−4:2n−2.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<Window>,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Execution {
                    stdout: String::new(),
                    stderr: rendered,
                    code: exit::USAGE,
                }
            } else {
                Execution {
                    stdout: rendered,
                    stderr: String::new(),
                    code: exit::OK,
                }
            };
        }
    };

    let result = match &cli.command {
        Command::Homology(args) => commands::cmd_homology(&args.exponents),
        Command::Orbits(args) => commands::cmd_orbits(&args.exponents),
        Command::Ch(args) => commands::cmd_ch(args),
        Command::Sum(args) => commands::cmd_sum(args),
        Command::Exotic(args) => commands::cmd_exotic(args),
    };

    match result {
        Ok(outcome) => {
            let stdout = match cli.format {
                Format::Json => outcome.envelope.to_json(),
                Format::Text => text::render(&outcome.envelope),
            };
            let stderr = outcome
                .envelope
                .diagnostics
                .iter()
                .map(|d| format!("note: {d}\n"))
                .collect();
            Execution {
                stdout,
                stderr,
                code: outcome.code,
            }
        }
        Err(e) => Execution {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}
