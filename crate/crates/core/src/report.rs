//! Verification report records, one JSON object per executed check.

use serde::Serialize;

/// Residual field: either an exact-zero marker from the symbolic backend
/// or a numeric value.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Residual {
    Exact(&'static str),
    Value(f64),
}

impl Residual {
    pub fn exact_zero() -> Self {
        Residual::Exact("exact-zero")
    }
}

/// One verification record: `{check, params, backend, residual, pass}`.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub check: String,
    pub params: serde_json::Value,
    pub backend: &'static str,
    pub residual: Residual,
    pub pass: bool,
}

impl Record {
    pub fn symbolic(check: impl Into<String>, params: serde_json::Value, is_zero: bool) -> Self {
        Record {
            check: check.into(),
            params,
            backend: "symbolic",
            residual: if is_zero {
                Residual::exact_zero()
            } else {
                Residual::Value(f64::INFINITY)
            },
            pass: is_zero,
        }
    }

    pub fn numeric(
        check: impl Into<String>,
        params: serde_json::Value,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Record {
            check: check.into(),
            params,
            backend: "numeric",
            residual: Residual::Value(residual),
            pass: residual < tolerance,
        }
    }
}

/// Spectrum dump row for the CSV export.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRow {
    pub label: usize,
    pub eigenvalue_re: f64,
    pub eigenvalue_im: f64,
    pub multiplicity: usize,
    pub predicted_re: f64,
    pub predicted_im: f64,
    pub abs_error: f64,
}
