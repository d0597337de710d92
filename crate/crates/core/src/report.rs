//! Deterministic reports shared by the CLI and the C interface.

use std::fmt::Write;

use indexmap::IndexMap;
use serde::Serialize;
use serde_json::Value;

use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>, verdict: &Verdict) -> Self {
        let w = verdict.witness();
        CheckEntry {
            name: name.into(),
            pass: verdict.is_pass(),
            witness: w.map(|w| w.labels.clone()),
            detail: w.map(|w| w.detail.clone()),
        }
    }
}

/// `checks` decide the exit status; `flags` are informational verdicts;
/// `info` holds any other output, in insertion order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub lattice: String,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "IndexMap::is_empty")]
    pub info: IndexMap<String, Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, lattice: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            lattice: lattice.into(),
            checks: Vec::new(),
            flags: Vec::new(),
            info: IndexMap::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, verdict: &Verdict) -> &mut Self {
        self.checks.push(CheckEntry::new(name, verdict));
        self
    }

    pub fn flag(&mut self, name: impl Into<String>, verdict: &Verdict) -> &mut Self {
        self.flags.push(CheckEntry::new(name, verdict));
        self
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.info.insert(key.into(), value.into());
        self
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.command, self.lattice).unwrap();
        let entry = |out: &mut String, c: &CheckEntry, yes: &str, no: &str| {
            write!(out, "  {:<5} {}", if c.pass { yes } else { no }, c.name).unwrap();
            if let Some(w) = &c.witness {
                write!(out, "  witness: ({})", w.join(", ")).unwrap();
            }
            if let Some(d) = &c.detail {
                write!(out, "  {d}").unwrap();
            }
            out.push('\n');
        };
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                entry(&mut out, c, "pass", "FAIL");
            }
        }
        if !self.flags.is_empty() {
            out.push_str("flags:\n");
            for c in &self.flags {
                entry(&mut out, c, "yes", "no");
            }
        }
        for (k, v) in &self.info {
            match v {
                Value::Array(items) => {
                    writeln!(out, "{k}:").unwrap();
                    for item in items {
                        writeln!(out, "  {}", compact(item)).unwrap();
                    }
                }
                v => writeln!(out, "{k}: {}", compact(v)).unwrap(),
            }
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
