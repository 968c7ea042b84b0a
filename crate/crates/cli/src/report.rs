//! Reports and their canonical JSON and text forms.

use std::fmt::Write as _;

use conevanish_core::parse::GRAMMAR_VERSION;
use conevanish_core::Field;
use serde_json::{json, Value};

use crate::commands::{Outcome, OutcomeStatus};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const REPORT_SCHEMA: &str = "1";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Debug)]
pub struct Report {
    pub scenario: String,
    pub field: Option<Field>,
    pub outcomes: Vec<Outcome>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Exit code for a list of outcomes.
pub fn exit_code_for(statuses: impl IntoIterator<Item = OutcomeStatus>) -> i32 {
    let mut budget = false;
    for s in statuses {
        match s {
            OutcomeStatus::Ok | OutcomeStatus::Pass => {}
            OutcomeStatus::BudgetExhausted => budget = true,
            _ => return EXIT_FAIL,
        }
    }
    if budget {
        EXIT_BUDGET
    } else {
        EXIT_PASS
    }
}

impl Report {
    pub fn new(scenario: &str, field: Option<Field>, outcomes: Vec<Outcome>) -> Self {
        Self { scenario: scenario.to_string(), field, outcomes }
    }

    pub fn exit_code(&self) -> i32 {
        exit_code_for(self.outcomes.iter().map(|o| o.status))
    }

    pub fn to_json(&self) -> Value {
        let count = |s: OutcomeStatus| self.outcomes.iter().filter(|o| o.status == s).count();
        json!({
            "report_schema": REPORT_SCHEMA,
            "scenario": self.scenario,
            "field": self.field.map(|f| f.to_string()),
            "versions": { "artifact": ARTIFACT_VERSION, "grammar": GRAMMAR_VERSION },
            "invocations": self.outcomes.iter().map(Outcome::to_json).collect::<Vec<_>>(),
            "summary": {
                "total": self.outcomes.len(),
                "ok": count(OutcomeStatus::Ok),
                "pass": count(OutcomeStatus::Pass),
                "fail": count(OutcomeStatus::Fail),
                "inconclusive": count(OutcomeStatus::Inconclusive),
                "budget_exhausted": count(OutcomeStatus::BudgetExhausted),
                "error": count(OutcomeStatus::Error),
                "exit_code": self.exit_code(),
            },
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {} (artifact {}, grammar {})", self.scenario, ARTIFACT_VERSION, GRAMMAR_VERSION);
        if let Some(f) = self.field {
            let _ = writeln!(out, "field {f}");
        }
        for o in &self.outcomes {
            out.push_str(&render_outcome(o));
        }
        let _ = writeln!(out, "{} invocation(s), exit code {}", self.outcomes.len(), self.exit_code());
        out
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => canonical_json(&self.to_json()),
            Format::Text => self.render_text(),
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json(v: &Value) -> String {
    // serde_json's default map is a BTreeMap, so keys are already sorted.
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn status_word(s: OutcomeStatus) -> &'static str {
    match s {
        OutcomeStatus::Ok => "OK",
        OutcomeStatus::Pass => "PASS",
        OutcomeStatus::Fail => "FAIL",
        OutcomeStatus::Inconclusive => "INCONCLUSIVE",
        OutcomeStatus::BudgetExhausted => "BUDGET",
        OutcomeStatus::Error => "ERROR",
    }
}

pub fn render_outcome(o: &Outcome) -> String {
    let mut out = String::new();
    let args: Vec<String> = o.invocation.args.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "{:<12} {} {}", status_word(o.status), o.invocation.name(), args.join(" "));
    match (&o.certificate, &o.result) {
        (Some(c), _) => {
            for line in c.render_text().lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
        (None, Value::Object(map)) => {
            for (k, v) in map {
                let _ = writeln!(out, "    {k}: {v}");
            }
        }
        (None, v) => {
            let _ = writeln!(out, "    {v}");
        }
    }
    out
}
