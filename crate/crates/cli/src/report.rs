//! Versioned JSON reports and their plain-text rendering.

use fibered_core::algebra::{Matrix, MultiPoly, Rational, SignatureResult, UniPoly};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

pub type Fields = BTreeMap<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Fields,
    pub verdict: String,
    pub exit_code: i32,
    pub certificates: Fields,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!("input {k}: {}\n", render(v)));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        for (k, v) in &self.certificates {
            out.push_str(&format!("{k}: {}\n", render(v)));
        }
        out.push_str(&format!("seed: {}\n", self.seed));
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("timing_ms: {t}\n"));
        }
        out
    }
}

/// Compact rendering without JSON string quotes.
pub fn render(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(render).collect::<Vec<_>>().join(", ")),
        Value::Object(o) => format!(
            "{{{}}}",
            o.iter().map(|(k, v)| format!("{k}: {}", render(v))).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn point(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rational).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| point(r)).collect())
}

pub fn poly_matrix(m: &Matrix<MultiPoly>, names: &[&str]) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|p| Value::String(p.display_with(names))).collect()))
            .collect(),
    )
}

pub fn base_matrix(m: &Matrix<UniPoly>, var: &str) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|p| Value::String(p.display_var(var))).collect()))
            .collect(),
    )
}

pub fn signature(s: &SignatureResult) -> Value {
    json!({ "n_plus": s.n_plus, "n_minus": s.n_minus, "n_zero": s.n_zero })
}

pub fn fields<const N: usize>(pairs: [(&str, Value); N]) -> Fields {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
