//! Canonical JSON reports.
//!
//! Objects are serialized with sorted keys (serde_json's default map), so a
//! report is byte-identical across runs for identical inputs.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// A finished computation: what was asked, on which input, and the results.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub params: Value,
    pub results: Value,
}

impl Report {
    pub fn new(command: &str, input: Value, params: Value, results: Value) -> Self {
        Report { command: command.to_string(), input, params, results }
    }

    /// SHA-256 of the canonical serialization of command, input and parameters.
    pub fn input_digest(&self) -> String {
        let doc = json!({"command": self.command, "input": self.input, "params": self.params});
        let digest = Sha256::digest(canonical(&doc).as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": "milnorkit",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "input": self.input,
            "input_digest": self.input_digest(),
            "params": self.params,
            "results": self.results,
        })
    }

    /// Compact canonical JSON.
    pub fn render(&self) -> String {
        canonical(&self.to_json())
    }

    /// Human-readable summary: one `path = value` line per leaf of the results.
    pub fn summary(&self) -> String {
        let mut lines = vec![format!("milnorkit {} ({})", self.command, describe_input(&self.input))];
        flatten("", &self.results, &mut lines);
        lines.join("\n")
    }
}

/// Compact serialization with sorted object keys.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn describe_input(input: &Value) -> String {
    match input.get("name").and_then(Value::as_str) {
        Some(n) => n.to_string(),
        None => input.get("file").and_then(Value::as_str).unwrap_or("no input").to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => out.push(format!("{prefix} = {}", canonical(v))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_digest_is_stable() {
        let r = Report::new("lattice", json!({"name": "braid"}), json!({"b": 1, "a": 2}), json!({"z": 1, "y": [1, 2]}));
        let s = r.render();
        assert!(s.find("\"command\"").unwrap() < s.find("\"input\"").unwrap());
        assert!(s.contains("\"params\":{\"a\":2,\"b\":1}"));
        assert_eq!(r.input_digest(), r.clone().input_digest());
        assert_eq!(r.input_digest().len(), 64);
        let other = Report::new("lattice", json!({"name": "b3"}), json!({}), json!({}));
        assert_ne!(r.input_digest(), other.input_digest());
    }

    #[test]
    fn summary_lists_leaves() {
        let r = Report::new("milnor", json!({"name": "braid"}), json!({}), json!({"b1": 7, "delta1": {"1": 5}}));
        assert_eq!(r.summary(), "milnorkit milnor (braid)\nb1 = 7\ndelta1.1 = 5");
    }
}
