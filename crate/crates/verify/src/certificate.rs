//! Structured, byte-deterministic verification reports.

use std::collections::BTreeMap;
use std::fmt;

use conevanish_core::{Field, Ideal, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Identifies which claim a certificate speaks to; `wire_id` is the serialized form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimId {
    ExceptionalFiber,
    ProjectiveNormality,
    BlowupGorenstein,
    Nonvanishing,
}

impl ClaimId {
    pub fn wire_id(self) -> &'static str {
        match self {
            ClaimId::ExceptionalFiber => "exceptional_fiber",
            ClaimId::ProjectiveNormality => "projective_normality",
            ClaimId::BlowupGorenstein => "blowup_gorenstein",
            ClaimId::Nonvanishing => "higher_direct_image_nonvanishing",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, witness: Value) -> Self {
        Self { name: name.into(), status, witness }
    }

    /// A skipped check carrying the reason and, for budget exhaustion, a marker.
    pub fn skipped(name: impl Into<String>, reason: impl Into<String>, budget: bool) -> Self {
        Self::new(name, Status::Skipped, json!({ "reason": reason.into(), "budget_exhausted": budget }))
    }

    /// Hypothesis checks have a `hypothesis` path segment.
    pub fn is_hypothesis(&self) -> bool {
        self.name.split('.').any(|s| s == "hypothesis")
    }

    pub fn budget_exhausted(&self) -> bool {
        self.status == Status::Skipped && self.witness["budget_exhausted"] == Value::Bool(true)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub claim: ClaimId,
    pub inputs: Value,
    pub field: Field,
    pub checks: Vec<Check>,
    pub assumptions_unverified: Vec<String>,
    pub notes: Vec<String>,
    pub stats: BTreeMap<String, u64>,
}

impl Certificate {
    pub fn new(claim: ClaimId, field: Field, inputs: Value) -> Self {
        let mut notes = Vec::new();
        if let Field::Prime(p) = field {
            notes.push(format!(
                "computed over F{}: certifies the characteristic-{} statement; the characteristic-0 statement for these flat constructions needs a passing run over Q as well",
                p.modulus(),
                p.modulus()
            ));
        }
        Self {
            claim,
            inputs,
            field,
            checks: Vec::new(),
            assumptions_unverified: Vec::new(),
            notes,
            stats: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Adds every check of `other` under `prefix.` and merges its stats.
    pub fn absorb(&mut self, prefix: &str, other: Certificate) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.stats {
            *self.stats.entry(format!("{prefix}.{k}")).or_insert(0) += v;
        }
    }

    pub fn stat(&mut self, key: &str, value: u64) {
        self.stats.insert(key.to_string(), value);
    }

    /// Failed ordinary check ⇒ fail; otherwise a failed hypothesis ⇒ inconclusive.
    pub fn verdict(&self) -> Verdict {
        let failed = |hyp: bool| self.checks.iter().any(|c| c.status == Status::Fail && c.is_hypothesis() == hyp);
        if failed(false) {
            Verdict::Fail
        } else if failed(true) {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    pub fn budget_exhausted(&self) -> bool {
        self.checks.iter().any(Check::budget_exhausted)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn inputs_hash(&self) -> String {
        hex::encode(Sha256::digest(self.inputs.to_string().as_bytes()))
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "status": c.status.as_str(), "witness": c.witness }))
            .collect();
        json!({
            "claim_id": self.claim.wire_id(),
            "inputs": self.inputs,
            "inputs_hash": self.inputs_hash(),
            "field": self.field.to_string(),
            "checks": checks,
            "assumptions_unverified": self.assumptions_unverified,
            "notes": self.notes,
            "verdict": self.verdict().to_string(),
            "stats": self.stats,
        })
    }

    /// Human-readable summary: one line per check.
    pub fn render_text(&self) -> String {
        let mut out = format!("{} [{}]: {}\n", self.claim.wire_id(), self.field, self.verdict());
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("  {tag} {}\n", c.name));
        }
        for a in &self.assumptions_unverified {
            out.push_str(&format!("  ASSUMED {a}\n"));
        }
        out
    }
}

/// Canonical serialization of an ideal: ring declaration and reduced Gröbner basis.
pub fn ideal_json(ideal: &Ideal) -> Result<Value> {
    let gb: Vec<String> = ideal.groebner_basis()?.iter().map(|p| p.to_string()).collect();
    Ok(json!({ "ring": ideal.ring().to_string(), "basis": gb }))
}

pub fn polys_json(ideal: &Ideal) -> Result<Value> {
    Ok(Value::from(ideal.groebner_basis()?.iter().map(|p| p.to_string()).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_rules() {
        let mut c = Certificate::new(ClaimId::ExceptionalFiber, Field::Rationals, json!({}));
        assert_eq!(c.verdict(), Verdict::Pass);
        c.push(Check::skipped("slow", "budget", true));
        assert_eq!(c.verdict(), Verdict::Pass);
        assert!(c.budget_exhausted());
        c.push(Check::new("hypothesis.ci", Status::Fail, Value::Null));
        assert_eq!(c.verdict(), Verdict::Inconclusive);
        c.push(Check::new("degree_1", Status::Fail, Value::Null));
        assert_eq!(c.verdict(), Verdict::Fail);
        assert!(c.render_text().contains("FAIL degree_1"));
    }

    #[test]
    fn json_round_trip() {
        let mut c = Certificate::new(ClaimId::Nonvanishing, Field::prime(31).unwrap(), json!({"a": 1}));
        c.push(Check::new("x", Status::Pass, json!({"n": 3})));
        let s = serde_json::to_string(&c.to_json()).unwrap();
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c.to_json());
        assert_eq!(back["verdict"], "pass");
        assert_eq!(back["inputs_hash"].as_str().unwrap().len(), 64);
    }
}
