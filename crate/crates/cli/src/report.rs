//! Machine-readable run reports.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use metriq_core::ComplexMatrix;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of_file(path: &Path) -> std::io::Result<Self> {
        let bytes = std::fs::read(path)?;
        Ok(Self { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) })
    }
}

/// A residual judged against the tolerance recorded next to it.
#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub identity: String,
    pub value: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub scalars: BTreeMap<String, Value>,
    pub residuals: Vec<Residual>,
    pub data: BTreeMap<String, Value>,
    pub passed: bool,
    /// Wall-clock milliseconds; the only non-deterministic field, kept last.
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            command,
            inputs: Vec::new(),
            scalars: BTreeMap::new(),
            residuals: Vec::new(),
            data: BTreeMap::new(),
            passed: true,
            timing_ms: 0.0,
        }
    }

    pub fn scalar(&mut self, name: &str, value: impl Into<Value>) {
        self.scalars.insert(name.into(), value.into());
    }

    pub fn data(&mut self, name: &str, value: impl Into<Value>) {
        self.data.insert(name.into(), value.into());
    }

    /// Records `value ≤ tolerance`; NaN and infinity fail.
    pub fn residual(&mut self, identity: &str, value: f64, tolerance: f64) {
        let passed = value <= tolerance;
        self.passed &= passed;
        let value = value.is_finite().then_some(value);
        self.residuals.push(Residual { identity: identity.into(), value, tolerance, passed });
    }

    /// A check that could not be evaluated counts as failed.
    pub fn failed(&mut self, identity: &str, tolerance: f64) {
        self.passed = false;
        self.residuals.push(Residual { identity: identity.into(), value: None, tolerance, passed: false });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn matrix_value(m: &ComplexMatrix) -> Value {
    let entries: Vec<Value> = m.as_slice().iter().map(|z| Value::from(vec![z.re, z.im])).collect();
    serde_json::json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

/// A CSV table: header plus rows of already-formatted cells.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    pub fn from_residuals(residuals: &[Residual]) -> Self {
        let mut t = Self::new(&["identity", "value", "tolerance", "passed"]);
        for r in residuals {
            let v = r.value.map_or_else(|| "nan".to_string(), num);
            t.push(vec![quote(&r.identity), v, num(r.tolerance), r.passed.to_string()]);
        }
        t
    }
}

/// Shortest round-trip decimal.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

fn quote(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
