//! The JSON/text output record shared by every subcommand.

use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1.0.0";

pub struct OutputRecord {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub results: Value,
    pub diagnostics: Value,
}

impl OutputRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "diagnostics": self.diagnostics,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("records contain only JSON-safe values")
    }

    /// `key: value` lines, nested keys joined with dots.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.params {
            out.push_str(&format!("params.{k}: {}\n", scalar(v)));
        }
        flatten("results", &self.results, &mut out);
        flatten("diagnostics", &self.diagnostics, &mut out);
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                flatten(&format!("{prefix}.{k}"), inner, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            for (i, inner) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), inner, out);
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
}

/// A non-finite value becomes `null`, never a lossy string.
pub fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}
