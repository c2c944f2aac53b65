//! Report documents and their deterministic serialization.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Number, Value};

use crate::error::{CliError, CliResult};

/// Significant digits kept for every float in a report.
pub const SIGNIFICANT_DIGITS: usize = 15;

#[derive(Clone, Debug, Serialize)]
pub struct CommandMeta {
    pub name: String,
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, residual: f64) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            residual,
            detail: None,
        }
    }

    /// Passes when `residual <= tol`.
    pub fn within(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        CheckResult {
            name: name.into(),
            passed: residual <= tol,
            residual,
            detail: None,
        }
    }

    pub fn exact<T: PartialEq + std::fmt::Debug>(
        name: impl Into<String>,
        got: T,
        expected: T,
    ) -> Self {
        let passed = got == expected;
        CheckResult {
            name: name.into(),
            passed,
            residual: if passed { 0.0 } else { 1.0 },
            detail: (!passed).then(|| format!("got {got:?}, expected {expected:?}")),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub command: CommandMeta,
    pub payload: Value,
    pub checks: Vec<CheckResult>,
}

impl ReportDocument {
    pub fn new(name: &str, payload: impl Serialize) -> CliResult<Self> {
        Ok(ReportDocument {
            command: CommandMeta {
                name: name.to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed: None,
                tolerances: BTreeMap::new(),
            },
            payload: serde_json::to_value(payload)?,
            checks: Vec::new(),
        })
    }

    pub fn tolerance(mut self, name: &str, value: f64) -> Self {
        self.command.tolerances.insert(name.to_string(), value);
        self
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    /// Pretty JSON with sorted keys and rounded floats, ending in a newline.
    pub fn to_json(&self) -> CliResult<String> {
        let value = normalize(serde_json::to_value(self)?)?;
        let mut out = serde_json::to_string_pretty(&value)?;
        out.push('\n');
        Ok(out)
    }
}

/// Rounds a float to [`SIGNIFICANT_DIGITS`] and maps `-0` to `0`.
pub fn round_float(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let r: f64 = s.parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn normalize(v: Value) -> CliResult<Value> {
    Ok(match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            Value::Number(
                Number::from_f64(round_float(x))
                    .ok_or_else(|| CliError::Output(format!("non-finite value {x} in report")))?,
            )
        }
        Value::Array(items) => {
            Value::Array(items.into_iter().map(normalize).collect::<CliResult<_>>()?)
        }
        // serde_json's default map is ordered by key
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| Ok((k, normalize(v)?)))
                .collect::<CliResult<_>>()?,
        ),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_and_negative_zero() {
        assert_eq!(round_float(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(round_float(0.1 + 0.2), 0.3);
        assert_eq!(round_float(1.0 / 3.0), 0.333333333333333);
        assert_eq!(round_float(-1e-300 * 1e-300), 0.0);
    }

    #[test]
    fn keys_are_sorted() {
        let mut doc = ReportDocument::new("t", serde_json::json!({"z": 1, "a": -0.0})).unwrap();
        doc = doc.tolerance("b", 1e-9).tolerance("a", 1e-6);
        let s = doc.to_json().unwrap();
        assert!(s.find("\"a\": 0.0").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.find("\"a\": 1e-6").unwrap() < s.find("\"b\": 1e-9").unwrap());
    }
}
