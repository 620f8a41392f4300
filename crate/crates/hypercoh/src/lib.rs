//! File formats and the command-line runner for `hypercoh-core`.
//!
//! [`run`] executes one [`JobSpec`] and returns the exit code together with the
//! rendered report; the `hypercoh` binary is a thin wrapper around it.

pub mod examples;
pub mod format;
pub mod model;
pub mod report;
mod run;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

pub use run::{execute, run, Outcome};

/// Failures, each mapped to a process exit code.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("insufficient truncation: {0}")]
    Truncation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) | CliError::Unsupported(_) => 3,
            CliError::Truncation(_) => 4,
        }
    }

    pub fn from_core(e: hypercoh_core::Error) -> Self {
        use hypercoh_core::Error as E;
        match e {
            E::InsufficientTruncation { .. } => CliError::Truncation(e.to_string()),
            E::UnsupportedCharacteristic(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }

    /// Prefix the message with where the problem was found.
    pub fn located(self, at: &str) -> Self {
        let wrap = |m: String| format!("{at}: {m}");
        match self {
            CliError::Parse(m) => CliError::Parse(wrap(m)),
            CliError::Validation(m) => CliError::Validation(wrap(m)),
            CliError::Unsupported(m) => CliError::Unsupported(wrap(m)),
            CliError::Truncation(m) => CliError::Truncation(wrap(m)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Cohomology,
    Ring,
    DescentCheck,
    Spectral,
    DirectImage,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Ring => "ring",
            Command::DescentCheck => "descent-check",
            Command::Spectral => "spectral",
            Command::DirectImage => "direct-image",
            Command::Validate => "validate",
        }
    }
}

/// The coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

/// Primes with a compiled field implementation.
pub const PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 13, 101, 32003, 65521];

impl FieldChoice {
    pub fn characteristic(self) -> u64 {
        match self {
            FieldChoice::Rationals => 0,
            FieldChoice::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => f.write_str("Q"),
            FieldChoice::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "Q" | "q" | "0" | "rational" | "rationals" => Ok(FieldChoice::Rationals),
            t => {
                let p: u64 = t.trim_start_matches(['F', 'f']).parse().map_err(|_| format!("unknown field `{s}`"))?;
                if PRIMES.contains(&p) {
                    Ok(FieldChoice::Prime(p))
                } else {
                    Err(format!("unsupported prime {p}; choose one of {PRIMES:?}"))
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Where the input document comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Path(PathBuf),
    /// One of the bundled examples, see [`examples::BUILTIN`].
    Builtin(String),
    Text(String),
}

impl Input {
    /// `builtin:NAME` names a bundled example; anything else is a path.
    pub fn from_arg(arg: &str) -> Self {
        match arg.strip_prefix("builtin:") {
            Some(name) => Input::Builtin(name.to_string()),
            None => Input::Path(PathBuf::from(arg)),
        }
    }
}

/// One invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub input: Input,
    pub command: Command,
    /// Degree bound `n_max`.
    pub degree: usize,
    pub engine: hypercoh_core::godement::Engine,
    pub field: FieldChoice,
    pub format: OutputFormat,
    /// Element names of an up-set; the whole poset when absent.
    pub open: Option<Vec<String>>,
    /// Monotone map file for `direct-image`; the map to a point when absent.
    pub map: Option<Input>,
    /// Page of the spectral sequence; the stable page when absent.
    pub page: Option<usize>,
    /// Index `r` of the filtration `σ_r` on the simple.
    pub sigma: usize,
}

impl JobSpec {
    pub fn new(input: Input, command: Command) -> Self {
        JobSpec {
            input,
            command,
            degree: 2,
            engine: hypercoh_core::godement::Engine::Aw,
            field: FieldChoice::Rationals,
            format: OutputFormat::Text,
            open: None,
            map: None,
            page: None,
            sigma: 0,
        }
    }
}
