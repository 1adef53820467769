//! Terminal front end over the kernel: argument parsing, workspace
//! documents, and exactly one structured result record per invocation.
//!
//! Exit codes: 0 success, 1 usage, 2 malformed input (expressions,
//! descriptors, workspace documents), 3 budget exhausted, 4 precondition
//! violated. Diagnostics go to the error channel; the output channel carries
//! only the result record.

pub mod args;
pub mod commands;
pub mod output;
pub mod workspace;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input outside the element grammar: workspace documents,
    /// unresolved names, term syntax.
    Input(String),
    /// A library error wearing the name of the workspace entry that
    /// triggered it.
    Context {
        context: String,
        source: semiord::Error,
    },
    Lib(semiord::Error),
}

impl From<semiord::Error> for CliError {
    fn from(source: semiord::Error) -> Self {
        CliError::Lib(source)
    }
}

fn lib_exit_code(error: &semiord::Error) -> i32 {
    match error {
        semiord::Error::Parse(_) | semiord::Error::Descriptor(_) => 2,
        semiord::Error::BudgetExhausted { .. } => 3,
        _ => 4,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Context { source, .. } | CliError::Lib(source) => lib_exit_code(source),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(message) => write!(f, "{message}"),
            CliError::Context { context, source } => write!(f, "{context}: {source}"),
            CliError::Lib(source) => write!(f, "{source}"),
        }
    }
}

/// Runs one invocation against the given sinks and returns the exit code.
/// Success writes one record (and nothing else) to `out`; failure writes a
/// diagnostic to `err` and leaves `out` untouched.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            }
        }
    };
    match commands::dispatch(&cli) {
        Ok(record) => {
            let _ = writeln!(out, "{}", record.render(cli.format));
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
