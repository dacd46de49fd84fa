//! JSON matrix files.
//!
//! ```json
//! {
//!   "rows": 2,
//!   "cols": 2,
//!   "kind": "general",
//!   "entries": [
//!     [1.0000000000000000e0, 0.0000000000000000e0],
//!     ...
//!   ]
//! }
//! ```
//!
//! Entries are `[re, im]` pairs in row-major order. `kind` is optional on
//! input (default `general`); `hermitian` and `metric` are validated on load.
//! Saving always uses 17 significant digits, so save → load → save is
//! byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use metriq_core::numkernel::HERMITIAN_TOL;
use metriq_core::{c64, ComplexMatrix, MetricOperator};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    General,
    Hermitian,
    Metric,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::General => "general",
            MatrixKind::Hermitian => "hermitian",
            MatrixKind::Metric => "metric",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MatrixFileError {
    #[error("{path}: cannot read file: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: parse error at line {line}, field `{field}`: {message}")]
    Parse { path: String, line: usize, field: String, message: String },
    #[error("{path}: matrix tagged `{kind}` fails validation: {reason}")]
    KindViolation { path: String, kind: &'static str, reason: String },
}

/// 1-based line of the first occurrence of `"key"`, or 1.
fn line_of_key(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map_or(1, |i| i + 1)
}

fn parse_error(path: &str, text: &str, field: &str, message: impl Into<String>) -> MatrixFileError {
    let top = field.split('[').next().unwrap_or(field);
    MatrixFileError::Parse { path: path.into(), line: line_of_key(text, top), field: field.into(), message: message.into() }
}

fn dimension(obj: &serde_json::Map<String, Value>, path: &str, text: &str, key: &str) -> Result<usize, MatrixFileError> {
    match obj.get(key) {
        None => Err(parse_error(path, text, key, "missing")),
        Some(v) => v
            .as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| parse_error(path, text, key, format!("expected a non-negative integer, got {v}"))),
    }
}

/// Parses matrix-file text; `path` only labels errors.
pub fn parse_matrix(text: &str, path: &str) -> Result<(ComplexMatrix, MatrixKind), MatrixFileError> {
    let value: Value = serde_json::from_str(text).map_err(|e| MatrixFileError::Parse {
        path: path.into(),
        line: e.line(),
        field: "<document>".into(),
        message: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| parse_error(path, text, "<document>", "expected a JSON object"))?;
    let rows = dimension(obj, path, text, "rows")?;
    let cols = dimension(obj, path, text, "cols")?;
    let kind = match obj.get("kind") {
        None => MatrixKind::General,
        Some(v) => MatrixKind::deserialize(v).map_err(|_| {
            parse_error(path, text, "kind", format!("expected one of general, hermitian, metric; got {v}"))
        })?,
    };
    let entries = obj
        .get("entries")
        .ok_or_else(|| parse_error(path, text, "entries", "missing"))?
        .as_array()
        .ok_or_else(|| parse_error(path, text, "entries", "expected an array of [re, im] pairs"))?;
    if entries.len() != rows * cols {
        return Err(parse_error(
            path,
            text,
            "entries",
            format!("rows * cols = {} but {} entries given", rows * cols, entries.len()),
        ));
    }
    let mut data = Vec::with_capacity(entries.len());
    for (k, e) in entries.iter().enumerate() {
        let field = format!("entries[{k}]");
        let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| parse_error(path, text, &field, "expected [re, im]"))?;
        let re = pair[0].as_f64().ok_or_else(|| parse_error(path, text, &field, "real part is not a number"))?;
        let im = pair[1].as_f64().ok_or_else(|| parse_error(path, text, &field, "imaginary part is not a number"))?;
        data.push(c64::new(re, im));
    }
    let m = ComplexMatrix::new(rows, cols, data).map_err(|e| parse_error(path, text, "entries", e.to_string()))?;
    check_kind(&m, kind).map_err(|reason| MatrixFileError::KindViolation { path: path.into(), kind: kind.as_str(), reason })?;
    Ok((m, kind))
}

fn check_kind(m: &ComplexMatrix, kind: MatrixKind) -> Result<(), String> {
    match kind {
        MatrixKind::General => Ok(()),
        MatrixKind::Hermitian => {
            if !m.is_square() {
                return Err(format!("not square ({}x{})", m.rows(), m.cols()));
            }
            let r = m.hermiticity_residual();
            if r > HERMITIAN_TOL {
                return Err(format!("relative Hermiticity residual {r:e} exceeds {HERMITIAN_TOL:e}"));
            }
            Ok(())
        }
        MatrixKind::Metric => MetricOperator::new(m.clone()).map(|_| ()).map_err(|e| e.to_string()),
    }
}

pub fn load_matrix(path: &Path) -> Result<(ComplexMatrix, MatrixKind), MatrixFileError> {
    let label = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| MatrixFileError::Io { path: label.clone(), source })?;
    parse_matrix(&text, &label)
}

/// Canonical text: fixed key order, one entry per line, `{:.16e}` numbers.
pub fn format_matrix(m: &ComplexMatrix, kind: MatrixKind) -> String {
    let mut s = String::new();
    writeln!(s, "{{").unwrap();
    writeln!(s, "  \"rows\": {},", m.rows()).unwrap();
    writeln!(s, "  \"cols\": {},", m.cols()).unwrap();
    writeln!(s, "  \"kind\": \"{}\",", kind.as_str()).unwrap();
    if m.as_slice().is_empty() {
        writeln!(s, "  \"entries\": []").unwrap();
    } else {
        writeln!(s, "  \"entries\": [").unwrap();
        let last = m.as_slice().len() - 1;
        for (k, z) in m.as_slice().iter().enumerate() {
            let sep = if k == last { "" } else { "," };
            writeln!(s, "    [{:.16e}, {:.16e}]{sep}", z.re, z.im).unwrap();
        }
        writeln!(s, "  ]").unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}

pub fn save_matrix(path: &Path, m: &ComplexMatrix, kind: MatrixKind) -> std::io::Result<()> {
    std::fs::write(path, format_matrix(m, kind))
}
