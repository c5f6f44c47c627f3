//! Command implementations behind the `nonclass` binary.
//!
//! Every command returns an [`Outcome`]: the text to emit (JSON, CSV or a plain
//! report) plus the process exit code. Keeping this separate from `main`
//! lets the integration tests drive the commands without spawning processes.

pub mod args;
pub mod commands;
pub mod table;

use std::fmt;

pub use args::{Cli, Command};
use nonclass_core::Execution;

/// Exit codes shared by all subcommands.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const UNPHYSICAL: i32 = 2;
    pub const NOT_CONVERGED: i32 = 3;
    pub const ORACLE_MISMATCH: i32 = 4;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    /// Diagnostic for standard error, if any.
    pub message: Option<String>,
}

impl Outcome {
    pub fn ok(output: String) -> Self {
        Self { output, code: exit::OK, message: None }
    }

    pub fn fail(code: i32, message: impl Into<String>) -> Self {
        Self { output: String::new(), code, message: Some(message.into()) }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.output)
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match &cli.command {
        Command::Measure(a) => commands::measure(a, exec),
        Command::SqueezedSweep(a) => commands::squeezed_sweep(a, exec),
        Command::DickeSweep(a) => commands::dicke_sweep(a, exec),
        Command::OracleCheck(a) => commands::oracle_check(a, exec),
    }
}
