use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Output of every subcommand. Everything except `timings_ms` is a pure
/// function of the inputs and the seed.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub inputs_digest: String,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub results: Value,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, inputs: &[Value]) -> Self {
        RunReport {
            command: command.to_string(),
            seed,
            inputs_digest: digest(inputs),
            checks: Vec::new(),
            passed: true,
            results: Value::Object(Default::default()),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    pub fn insert(&mut self, key: &str, value: impl Serialize) -> anyhow::Result<()> {
        let v = serde_json::to_value(value)?;
        if let Value::Object(map) = &mut self.results {
            map.insert(key.to_string(), v);
        }
        Ok(())
    }

    pub fn time(&mut self, key: &str, ms: f64) {
        self.timings_ms.insert(key.to_string(), ms);
    }

    pub fn to_pretty_text(&self) -> String {
        let mut out = String::new();
        let status = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{:<10}{}", "command", self.command);
        let _ = writeln!(out, "{:<10}{}", "seed", self.seed);
        let _ = writeln!(out, "{:<10}{}", "inputs", self.inputs_digest);
        let _ = writeln!(out, "{:<10}{}", "status", status);
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks");
            for c in &self.checks {
                let s = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  {s}  {}", c.name);
            }
        }
        if let Value::Object(map) = &self.results {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            let _ = writeln!(out, "results");
            for (k, v) in map {
                let _ = writeln!(out, "  {k:<width$}  {}", compact(v));
            }
        }
        if !self.timings_ms.is_empty() {
            let _ = writeln!(out, "timings");
            for (k, ms) in &self.timings_ms {
                let _ = writeln!(out, "  {k}  {ms:.1} ms");
            }
        }
        out
    }
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 100 {
        let head: String = s.chars().take(97).collect();
        format!("{head}...")
    } else {
        s
    }
}

/// `sha256:` followed by the hex digest of the compact JSON inputs.
pub fn digest(inputs: &[Value]) -> String {
    let mut h = Sha256::new();
    for v in inputs {
        h.update(v.to_string().as_bytes());
        h.update(b"\n");
    }
    format!("sha256:{}", hex::encode(h.finalize()))
}
