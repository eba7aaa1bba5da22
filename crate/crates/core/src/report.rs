//! Structured reports with exact scalars serialized as strings.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::linalg::{GradedSubspace, Matrix, Scalar};

/// Result of one operation. Keys serialize in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub operation: Option<String>,
    pub verdict: Option<String>,
    pub inputs: Vec<String>,
    pub checks: BTreeMap<String, Value>,
    pub witnesses: BTreeMap<String, Value>,
    pub certificates: BTreeMap<String, Value>,
    pub alarms: Vec<String>,
    pub notes: Vec<String>,
    /// Always null: output must not depend on wall-clock time.
    pub timings: Option<Value>,
}

impl Report {
    pub fn new(operation: &str, inputs: &[&str]) -> Self {
        Report {
            operation: Some(operation.to_string()),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn verdict(mut self, v: impl Into<String>) -> Self {
        self.verdict = Some(v.into());
        self
    }

    pub fn check(&mut self, key: &str, v: impl Serialize) {
        self.checks.insert(key.to_string(), to_value(v));
    }

    pub fn witness(&mut self, key: &str, v: Value) {
        self.witnesses.insert(key.to_string(), v);
    }

    pub fn certificate(&mut self, key: &str, v: Value) {
        self.certificates.insert(key.to_string(), v);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn alarm(&mut self, a: impl Into<String>) {
        self.alarms.push(a.into());
    }

    pub fn has_alarm(&self) -> bool {
        !self.alarms.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

pub fn scalar_json(s: &Scalar) -> Value {
    Value::String(s.to_exact_string())
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

/// Row-major list of rows.
pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_json(m.row(r))).collect())
}

pub fn dims_json(dims: &BTreeMap<i64, usize>) -> Value {
    Value::Object(dims.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

pub fn subspace_json(s: &GradedSubspace) -> Value {
    json!({
        "dim": s.dim(),
        "dims": dims_json(&s.dims()),
        "basis": s.graded_basis().iter().map(|(d, v)| json!({"degree": d, "vector": vector_json(v)})).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;

    #[test]
    fn empty_skeleton() {
        let text = serde_json::to_string(&Report::default()).unwrap();
        assert!(text.starts_with(r#"{"operation":null,"verdict":null,"inputs":[],"#));
        assert!(text.ends_with(r#""timings":null}"#));
    }

    #[test]
    fn scalars_as_strings() {
        let q = FieldSpec::Rationals;
        assert_eq!(vector_json(&[q.one(), q.from_i64(-1)]).to_string(), r#"["1","-1"]"#);
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(scalar_json(&f5.from_i64(7)), json!("2 mod 5"));
        let half = q.one().div(&q.from_i64(2)).unwrap();
        assert_eq!(scalar_json(&(half * q.from_i64(3))), json!("3/2"));
    }
}
