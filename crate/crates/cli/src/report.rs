//! JSON reports with a fixed field order and 17 significant digits.

use std::collections::BTreeMap;

use matroot::ComplexMatrix;
use serde_json::{Map, Number, Value};

pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("formatted float is a JSON number"))
}

pub fn matrix(m: &ComplexMatrix) -> Value {
    let mut obj = Map::new();
    obj.insert("dim".into(), Value::from(m.dim()));
    let data = m
        .as_slice()
        .iter()
        .map(|z| Value::Array(vec![real(z.re), real(z.im)]))
        .collect();
    obj.insert("data".into(), Value::Array(data));
    Value::Object(obj)
}

#[derive(Debug, Clone)]
pub struct RootReport {
    pub input_digest: String,
    pub p: u32,
    /// A branch tuple such as `(0,1)`, or `principal`.
    pub branch: String,
    pub root: ComplexMatrix,
    pub residual: f64,
    pub sector_ok: bool,
    pub oracle_deltas: BTreeMap<String, f64>,
    pub formula_path: String,
    /// Only for the series command.
    pub tail_bound: Option<f64>,
    /// Milliseconds per phase, in execution order.
    pub timings: Option<Vec<(String, f64)>>,
}

impl RootReport {
    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("input_digest".into(), Value::String(self.input_digest.clone()));
        obj.insert("p".into(), Value::from(self.p));
        obj.insert("branch".into(), Value::String(self.branch.clone()));
        obj.insert("root".into(), matrix(&self.root));
        obj.insert("residual".into(), real(self.residual));
        obj.insert("sector_ok".into(), Value::Bool(self.sector_ok));
        if !self.oracle_deltas.is_empty() {
            let deltas = self.oracle_deltas.iter().map(|(k, v)| (k.clone(), real(*v))).collect();
            obj.insert("oracle_deltas".into(), Value::Object(deltas));
        }
        obj.insert("formula_path".into(), Value::String(self.formula_path.clone()));
        if let Some(tail) = self.tail_bound {
            obj.insert("tail_bound".into(), real(tail));
        }
        if let Some(timings) = &self.timings {
            let t = timings.iter().map(|(k, v)| (k.clone(), real(*v))).collect();
            obj.insert("timings".into(), Value::Object(t));
        }
        Value::Object(obj)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub input_digest: String,
    pub root_digest: String,
    pub p: u32,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl VerifyReport {
    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("input_digest".into(), Value::String(self.input_digest.clone()));
        obj.insert("root_digest".into(), Value::String(self.root_digest.clone()));
        obj.insert("p".into(), Value::from(self.p));
        obj.insert("residual".into(), real(self.residual));
        obj.insert("tol".into(), real(self.tol));
        obj.insert("pass".into(), Value::Bool(self.pass));
        Value::Object(obj)
    }
}

pub fn render(v: &Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("reports serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(real(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(real(-2.0).to_string(), "-2.0000000000000000e+0");
        assert_eq!(real(f64::NAN), Value::String("NaN".into()));
    }

    #[test]
    fn field_order_is_fixed() {
        let report = RootReport {
            input_digest: "d".into(),
            p: 2,
            branch: "principal".into(),
            root: ComplexMatrix::identity(1),
            residual: 0.0,
            sector_ok: true,
            oracle_deltas: BTreeMap::from([("spectral".into(), 1e-16), ("series".into(), 2e-16)]),
            formula_path: "single-root".into(),
            tail_bound: None,
            timings: None,
        };
        let text = render(&report.to_value());
        let keys = [
            "input_digest",
            "\"p\"",
            "branch",
            "root",
            "residual",
            "sector_ok",
            "oracle_deltas",
            "formula_path",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(text.find("series").unwrap() < text.find("spectral").unwrap());
        assert!(!text.contains("timings"));
    }
}
