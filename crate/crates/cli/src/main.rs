mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, OutputFormat};
use pelltrib::Error;

/// What a subcommand produced: a JSON document, its human-readable form,
/// and whether everything it checked came out as expected.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn ok(json: serde_json::Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into(), ok: true }
    }
}

/// Serializes any value to a canonical JSON tree (object keys sorted).
pub fn to_json<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report types serialize")
}

pub fn render_json(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json values render")
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InsufficientPrecision { .. } => "insufficient_precision",
        Error::Domain { .. } => "domain",
        Error::InvalidInput(_) => "invalid_input",
        Error::ExpansionTooShort(_) => "expansion_too_short",
        Error::ReductionFailed { .. } => "reduction_failed",
        Error::Discrepancy(_) => "discrepancy",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.output;
    match commands::run(&cli) {
        Ok(report) => {
            match format {
                OutputFormat::Json => println!("{}", render_json(&report.json)),
                OutputFormat::Text => println!("{}", report.text.trim_end()),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let mut diag = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            if let Error::ReductionFailed { tried } = &e {
                diag["error"]["tried"] = to_json(tried);
            }
            match format {
                OutputFormat::Json => println!("{}", render_json(&diag)),
                OutputFormat::Text => eprintln!("error: {e}"),
            }
            // malformed or out-of-domain arguments are usage errors; everything
            // else is a failed computation
            let usage = matches!(e, Error::InvalidInput(_) | Error::Domain { .. });
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
