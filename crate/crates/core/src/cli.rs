//! Command-line front end.

use std::io::Read;
use std::num::NonZeroUsize;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::str::FromStr;

use clap::Parser;

use crate::confluence::{critical_pairs, decide_confluence, strongly_deterministic};
use crate::order::Precedence;
use crate::parse::parse_ctrs;
use crate::report::{ccps_report, classify_report, full_report, Format};
use crate::rewrite::Budget;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Full,
    CcpsOnly,
    ClassifyOnly,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Mode::Full),
            "ccps-only" => Ok(Mode::CcpsOnly),
            "classify-only" => Ok(Mode::ClassifyOnly),
            _ => Err(format!("unknown mode `{s}` (expected full, ccps-only or classify-only)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Path(PathBuf),
    Stdin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub input: Input,
    pub budget: Budget,
    pub precedence: Option<String>,
    pub mode: Mode,
    pub format: Format,
}

impl RunConfig {
    pub fn new(input: Input) -> Self {
        RunConfig {
            input,
            budget: Budget::default(),
            precedence: None,
            mode: Mode::Full,
            format: Format::Text,
        }
    }
}

/// Decide confluence of an oriented conditional rewrite system in COPS format.
#[derive(Debug, Parser)]
#[command(name = "ctrs-confluence", version)]
pub struct Args {
    /// Input file, or `-` for standard input.
    pub input: String,

    /// Maximum nesting depth of condition evaluation.
    #[arg(long, default_value_t = NonZeroUsize::new(Budget::default().cond_depth).unwrap())]
    pub cond_depth: NonZeroUsize,

    /// Maximum number of terms expanded per reduct search.
    #[arg(long, default_value_t = NonZeroUsize::new(Budget::default().fuel).unwrap())]
    pub fuel: NonZeroUsize,

    /// Terms larger than this are not explored.
    #[arg(long, default_value_t = NonZeroUsize::new(Budget::default().max_term_size).unwrap())]
    pub max_term_size: NonZeroUsize,

    /// Precedence to try first, e.g. `min>le>true,min>false` or `even=odd>true`.
    #[arg(long)]
    pub precedence: Option<String>,

    /// full, ccps-only or classify-only.
    #[arg(long, default_value = "full")]
    pub mode: Mode,

    /// text or structured.
    #[arg(long, default_value = "text")]
    pub format: Format,
}

impl From<Args> for RunConfig {
    fn from(a: Args) -> Self {
        RunConfig {
            input: if a.input == "-" {
                Input::Stdin
            } else {
                Input::Path(a.input.into())
            },
            budget: Budget {
                cond_depth: a.cond_depth.get(),
                fuel: a.fuel.get(),
                max_term_size: a.max_term_size.get(),
            },
            precedence: a.precedence,
            mode: a.mode,
            format: a.format,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: String) -> Self {
        Outcome {
            status: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Runs one analysis. Standard input is read only for [`Input::Stdin`].
pub fn run(config: &RunConfig) -> Outcome {
    let src = match &config.input {
        Input::Path(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        Input::Stdin => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map(|_| s)
                .map_err(|e| format!("standard input: {e}"))
        }
    };
    match src {
        Ok(src) => run_source(config, &src),
        Err(e) => Outcome::input_error(e),
    }
}

/// Runs one analysis on already loaded source text.
pub fn run_source(config: &RunConfig, src: &str) -> Outcome {
    match panic::catch_unwind(AssertUnwindSafe(|| analyse(config, src))) {
        Ok(out) => out,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            Outcome {
                status: EXIT_INTERNAL,
                stdout: String::new(),
                stderr: format!("internal error: {msg}\n"),
            }
        }
    }
}

fn analyse(config: &RunConfig, src: &str) -> Outcome {
    let ctrs = match parse_ctrs(src) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let hint = match config.precedence.as_deref().map(Precedence::parse).transpose() {
        Ok(h) => h,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let stdout = match config.mode {
        Mode::Full => full_report(&decide_confluence(&ctrs, hint.as_ref(), config.budget), config.format),
        Mode::CcpsOnly => ccps_report(&critical_pairs(&ctrs), config.format),
        Mode::ClassifyOnly => classify_report(&strongly_deterministic(&ctrs), config.format),
    };
    Outcome {
        status: EXIT_OK,
        stdout,
        stderr: String::new(),
    }
}
