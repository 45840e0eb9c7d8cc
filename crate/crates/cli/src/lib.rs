//! Front end for `chromatic-core`: argument parsing, reports, and the q-expansion cache.

pub mod args;
pub mod cache;
mod commands;
pub mod error;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use args::Cli;
use error::{EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE};

/// Result of one subcommand before it is wrapped into a report.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub precision_used: Option<usize>,
    pub text: String,
}

pub fn report_json(o: &Outcome, elapsed_ms: Option<u128>) -> Value {
    let mut r = json!({
        "command": o.command,
        "inputs": o.inputs,
        "outputs": o.outputs,
        "precision_used": o.precision_used,
        "versions": { "chromatic": env!("CARGO_PKG_VERSION") },
    });
    if let Some(ms) = elapsed_ms {
        r["timing_ms"] = json!(ms as u64);
    }
    r
}

/// Parse `argv`, run one command, write the report, and return the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_PRECONDITION
                }
            };
        }
    };
    let start = Instant::now();
    match commands::dispatch(&cli) {
        Ok(outcome) => {
            let elapsed = cli.global.timing.then(|| start.elapsed().as_millis());
            let written = if cli.global.json {
                let s = serde_json::to_string_pretty(&report_json(&outcome, elapsed)).expect("serializable");
                writeln!(out, "{s}")
            } else {
                let timing = elapsed.map(|ms| format!("time: {ms} ms\n")).unwrap_or_default();
                write!(out, "{}{}", outcome.text, timing)
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    error::EXIT_IO
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
