use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NoneFound,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NoneFound => "NONE-FOUND",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Pinned status for fixtures.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Status>,
    /// Free-form result: counts, computed values, solved matrices.
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub detail: Value,
    /// Failing triples, generators or elements with residuals.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: Value) -> Self {
        Check { name: name.into(), status: Status::Pass, expected: None, detail, witnesses: Vec::new() }
    }

    /// A failing check; always carries at least one witness.
    pub fn fail(name: impl Into<String>, detail: Value, witnesses: Vec<Value>) -> Self {
        let witnesses = if witnesses.is_empty() { vec![detail.clone()] } else { witnesses };
        Check { name: name.into(), status: Status::Fail, expected: None, detail, witnesses }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: Value, witnesses: Vec<Value>) -> Self {
        if ok {
            Check { witnesses, ..Check::pass(name, detail) }
        } else {
            Check::fail(name, detail, witnesses)
        }
    }

    pub fn none_found(name: impl Into<String>, detail: Value) -> Self {
        Check { name: name.into(), status: Status::NoneFound, expected: None, detail, witnesses: Vec::new() }
    }

    pub fn expecting(mut self, s: Status) -> Self {
        self.expected = Some(s);
        self
    }

    pub fn as_expected(&self) -> bool {
        self.expected.map_or(self.status == Status::Pass, |e| e == self.status)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: Vec<String>,
    pub status: Status,
    pub checks: Vec<Check>,
    /// Only with `--timing`, so that reports stay reproducible by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl RunReport {
    /// Overall status: pass iff every check passes, otherwise the first
    /// non-passing status.
    pub fn new(command: Vec<String>, checks: Vec<Check>) -> Self {
        let status = checks.iter().map(|c| c.status).find(|s| *s != Status::Pass).unwrap_or(Status::Pass);
        RunReport { schema: SCHEMA, command, status, checks, wall_time_ms: None }
    }

    /// For fixture tables: pass iff every check matches its pinned status.
    pub fn against_expectations(command: Vec<String>, checks: Vec<Check>) -> Self {
        let status = if checks.iter().all(Check::as_expected) { Status::Pass } else { Status::Fail };
        RunReport { schema: SCHEMA, command, status, checks, wall_time_ms: None }
    }

    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Pass {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// One line per check, witnesses indented below failures.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let pin = match c.expected {
                Some(e) if e == c.status => " (expected)".to_string(),
                Some(e) => format!(" (expected {e})"),
                None => String::new(),
            };
            let detail = if c.detail.is_null() { String::new() } else { format!(" {}", compact(&c.detail)) };
            out.push_str(&format!("{} {}{}{}\n", c.status, c.name, pin, detail));
            if c.status != Status::Pass {
                for w in c.witnesses.iter().take(5) {
                    out.push_str(&format!("    {}\n", truncate(compact(w), 240)));
                }
                if c.witnesses.len() > 5 {
                    out.push_str(&format!("    ... {} more\n", c.witnesses.len() - 5));
                }
            }
        }
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!("wall time {ms} ms\n"));
        }
        out
    }
}

/// Text mode only; `--json` keeps witnesses whole.
fn truncate(s: String, max: usize) -> String {
    match s.char_indices().nth(max) {
        Some((cut, _)) => format!("{} ... ({} chars)", &s[..cut], s.chars().count()),
        None => s,
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}
