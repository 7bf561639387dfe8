//! Batch driver for the `swkb` library: check suites, reports and curve tables.

pub mod config;
pub mod curves;
pub mod report;
pub mod suites;

use std::io::Write;

pub use config::{parse_checks, parse_levels, Check, ConfigError, Format, RunConfig};
pub use curves::{emit_curves, Curve};
pub use report::{Record, Report, Summary};
pub use suites::run;

/// Serialized report in the configured format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

/// Writes to `cfg.out_path`, or stdout when none is set.
pub fn write_report(report: &Report, cfg: &RunConfig) -> std::io::Result<()> {
    let body = render(report, cfg.output);
    match &cfg.out_path {
        Some(p) => std::fs::write(p, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}
