//! Named checks with their provenance, printed as text or JSON lines.

use std::fmt::Write as _;

use serde::Serialize;

/// Where a check's expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated in the source mathematics.
    Paper,
    /// Computed by an independent oracle.
    Derived,
    /// Immediate from definitions.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    pub inputs: String,
    pub expected_source: Source,
    pub value: String,
    pub pass: bool,
}

impl Check {
    pub fn new(check: &str, inputs: &str, source: Source, value: impl Into<String>, pass: bool) -> Check {
        Check { check: check.into(), inputs: inputs.into(), expected_source: source, value: value.into(), pass }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

/// Rendered report and whether every check passed. An empty list renders
/// as `no checks executed` and does not count as passing.
pub fn emit_report(checks: &[Check], mode: OutputMode) -> (String, bool) {
    if checks.is_empty() {
        return ("no checks executed\n".into(), false);
    }
    let mut out = String::new();
    for c in checks {
        match mode {
            OutputMode::Json => {
                out.push_str(&serde_json::to_string(c).expect("checks serialize"));
                out.push('\n');
            }
            OutputMode::Text => {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{verdict} {} [{}] {} = {}", c.check, source_name(c.expected_source), c.inputs, c.value);
            }
        }
    }
    if mode == OutputMode::Text {
        let passed = checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(out, "{passed}/{} pass", checks.len());
    }
    (out, checks.iter().all(|c| c.pass))
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::Paper => "paper",
        Source::Derived => "derived",
        Source::Trivial => "trivial",
    }
}
