//! Structured pass/fail results shared by every verifier.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One checked statement. `modulus` is zero for exact equalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub desc: String,
    pub status: Status,
    pub witness: Vec<BigInt>,
    pub modulus: BigInt,
}

impl CheckRecord {
    pub fn exact(desc: impl Into<String>, ok: bool, witness: Vec<BigInt>) -> Self {
        Self { desc: desc.into(), status: Status::from_bool(ok), witness, modulus: BigInt::zero() }
    }

    pub fn modular(desc: impl Into<String>, ok: bool, witness: Vec<BigInt>, modulus: BigInt) -> Self {
        Self { desc: desc.into(), status: Status::from_bool(ok), witness, modulus }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub family: String,
    pub params: BTreeMap<String, Value>,
    pub instances: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(family: impl Into<String>) -> Self {
        Self { family: family.into(), params: BTreeMap::new(), instances: Vec::new() }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.instances.push(record);
    }

    /// Appends another report's records, keeping this report's family.
    pub fn extend(&mut self, other: VerificationReport) {
        self.instances.extend(other.instances);
    }

    pub fn summary(&self) -> Summary {
        let pass = self.instances.iter().filter(|r| r.status == Status::Pass).count();
        Summary { pass, fail: self.instances.len() - pass }
    }

    pub fn passed(&self) -> bool {
        self.summary().fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.instances.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_json_value(&self) -> Value {
        let instances: Vec<Value> = self
            .instances
            .iter()
            .map(|r| {
                json!({
                    "desc": r.desc,
                    "status": r.status,
                    "witness": r.witness.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "modulus": r.modulus.to_string(),
                })
            })
            .collect();
        json!({
            "family": self.family,
            "params": self.params,
            "instances": instances,
            "summary": self.summary(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{} [{}]", self.family, params.join(", "));
        for r in &self.instances {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = write!(out, "  {tag}  {}", r.desc);
            if !r.witness.is_empty() {
                let w: Vec<String> = r.witness.iter().map(ToString::to_string).collect();
                let _ = write!(out, "  witness=[{}]", w.join(", "));
            }
            if !r.modulus.is_zero() {
                let _ = write!(out, "  mod {}", r.modulus);
            }
            out.push('\n');
        }
        let s = self.summary();
        let _ = writeln!(out, "  summary: {} pass, {} fail", s.pass, s.fail);
        out
    }
}
