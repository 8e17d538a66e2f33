//! Command-line front end.

mod commands;
pub mod parse;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::cns::CnsError;
use crate::coeff::SampleConfig;
use crate::eval::EvalError;
use crate::normalize::NormError;
use crate::ore::{OreError, OreRing};
use crate::serial::{ConfigError, RingConfig};
use parse::ParseError;

pub use commands::NormalizationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Exact arithmetic in skew polynomial rings.
#[derive(Debug, Parser)]
#[command(name = "ore", version)]
pub struct Cli {
    /// Ring configuration (JSON).
    #[arg(long, global = true)]
    pub ring: Option<PathBuf>,
    /// Seed for sampled law checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Samples per sampled law check.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of each expression.
    Normalform {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Multiply two expressions.
    Multiply { left: String, right: String },
    /// Evaluate an expression at a tuple of elements.
    Evaluate {
        expr: String,
        /// Image of each variable, in order.
        #[arg(long = "at", required = true)]
        at: Vec<String>,
        /// Ring holding the images; defaults to --ring.
        #[arg(long)]
        target_ring: Option<PathBuf>,
    },
    /// Mix the ring's derivations and variables into one of them.
    Mix {
        /// Comma-separated constants, one per non-target variable.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        coeffs: Vec<String>,
        /// Variable name or index; defaults to the last.
        #[arg(long)]
        target: Option<String>,
    },
    /// Make a relation monic in one variable.
    Monicize {
        expr: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Find the first grid point where a polynomial does not vanish.
    CnsSearch {
        expr: String,
        /// One set per line, elements separated by commas.
        #[arg(long)]
        sets: PathBuf,
    },
    /// Group roots of a univariate polynomial by conjugacy.
    GmCheck {
        expr: String,
        /// One root per line.
        #[arg(long)]
        roots: PathBuf,
    },
    /// Eliminate variables using witness relations.
    Normalize {
        /// One relation per line.
        #[arg(long, required_unless_present = "replay")]
        relations: Option<PathBuf>,
        /// Re-check a JSON report produced by this command.
        #[arg(long, conflicts_with = "relations")]
        replay: Option<PathBuf>,
    },
    /// Reduce an expression modulo a relation monic in one variable.
    Reduce {
        expr: String,
        #[arg(long)]
        relation: String,
        #[arg(long)]
        var: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{context}{source}")]
    Parse {
        context: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Cns(#[from] CnsError),
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error("{0}")]
    Check(String),
}

impl CliError {
    /// 1 for errors of the mathematics, 2 for malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Parse { source, .. } => match source {
                ParseError::Arithmetic { .. } => 1,
                _ => 2,
            },
            CliError::Config(ConfigError::Ore(_)) => 1,
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Non-empty lines that are not `#` comments.
pub(crate) fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

pub(crate) struct Context {
    pub sampling: SampleConfig,
    pub ring_path: Option<PathBuf>,
}

impl Context {
    pub fn load_ring(&self, path: &Path) -> Result<Arc<OreRing>, CliError> {
        Ok(RingConfig::from_json(&read(path)?)?.build(self.sampling)?)
    }

    pub fn ring(&self) -> Result<Arc<OreRing>, CliError> {
        let path = self
            .ring_path
            .as_ref()
            .ok_or_else(|| CliError::Usage("this command needs --ring".into()))?;
        self.load_ring(path)
    }
}

/// Runs one invocation, writing the result to `out` (or `--output`) and
/// diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let mut sampling = SampleConfig::default();
    if let Some(seed) = cli.seed {
        sampling.seed = seed;
    }
    if let Some(samples) = cli.samples {
        sampling.samples = samples;
    }
    let ctx = Context {
        sampling,
        ring_path: cli.ring.clone(),
    };
    match commands::execute(&cli.command, &ctx, cli.format) {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &text).map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                }),
                None => out.write_all(text.as_bytes()).map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                }),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
