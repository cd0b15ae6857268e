//! Machine-readable and human-readable reports.
//!
//! JSON schema, version 1. Field names and order are frozen:
//!
//! ```text
//! {
//!   "schema_version": 1,
//!   "tool": "weil",
//!   "version": "<crate version>",
//!   "command": "verify-paper" | "run" | "dim",
//!   "seed": <u64> | null,
//!   "status": "pass" | "fail" | "error",
//!   "exit_code": 0 | 1 | 2 | 3,
//!   "summary": { "total": n, "passed": n, "failed": n },
//!   "checks": [ { "id", "location", "status", "diagnostic", ["elapsed_ms"] } ],
//!   "error": null | { "kind", "line", "column", "message" }
//! }
//! ```
//!
//! `checks` is sorted by `id`. `elapsed_ms` is present only with `--timings`,
//! so that the default output is byte-for-byte reproducible.

use std::fmt::Write as _;

use serde::Serialize;
use weil_core::CheckResult;

use crate::error::{exit, ScriptError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: Option<u64>,
    pub status: &'static str,
    pub exit_code: i32,
    pub summary: Totals,
    pub checks: Vec<CheckEntry>,
    pub error: Option<ErrorEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Totals {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub location: String,
    pub status: &'static str,
    pub diagnostic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorEntry {
    pub kind: &'static str,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Report {
    pub fn from_checks(command: &str, seed: Option<u64>, results: &[CheckResult], timings: bool) -> Report {
        let mut checks: Vec<CheckEntry> = results
            .iter()
            .map(|c| CheckEntry {
                id: c.id.clone(),
                location: c.location.clone(),
                status: if c.passed { "pass" } else { "fail" },
                diagnostic: c.diagnostic.clone(),
                elapsed_ms: timings.then_some(c.elapsed.as_secs_f64() * 1e3),
            })
            .collect();
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = results.iter().filter(|c| c.passed).count();
        let failed = results.len() - passed;
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "weil",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            seed,
            status: if failed == 0 { "pass" } else { "fail" },
            exit_code: if failed == 0 { exit::OK } else { exit::CHECK_FAILED },
            summary: Totals {
                total: results.len(),
                passed,
                failed,
            },
            checks,
            error: None,
        }
    }

    pub fn from_error(command: &str, e: &ScriptError) -> Report {
        let span = e.span();
        let mut r = Report::from_checks(command, None, &[], false);
        r.status = "error";
        r.exit_code = e.exit_code();
        r.error = Some(ErrorEntry {
            kind: e.kind(),
            line: span.line,
            column: span.col,
            message: e.to_string(),
        });
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self, color: bool) -> String {
        let paint = |s: &str, code: &str| if color { format!("\x1b[{code}m{s}\x1b[0m") } else { s.to_string() };
        let mut out = String::new();
        if let Some(e) = &self.error {
            let _ = writeln!(out, "{}: {}", paint("error", "31"), e.message);
            return out;
        }
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = if c.status == "pass" { paint("pass", "32") } else { paint("FAIL", "31") };
            let _ = write!(out, "{tag}  {:width$}  {}", c.id, c.location);
            if let Some(ms) = c.elapsed_ms {
                let _ = write!(out, "  ({ms:.1} ms)");
            }
            out.push('\n');
            if let Some(d) = &c.diagnostic {
                let _ = writeln!(out, "      {d}");
            }
        }
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }
}
