use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::{Context, Format};

/// Report envelope shared by every subcommand.
pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    parameters: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), inputs: Map::new(), parameters: Map::new() }
    }

    /// Records an input by name with its byte length and SHA-256.
    pub fn input(&mut self, name: &str, path: Option<&Path>, bytes: &[u8]) {
        let source = match path {
            Some(p) if p != Path::new("-") => p.display().to_string(),
            _ => "-".to_string(),
        };
        self.inputs.insert(
            name.to_string(),
            json!({ "source": source, "bytes": bytes.len(), "sha256": hex(&Sha256::digest(bytes)) }),
        );
    }

    pub fn param(&mut self, name: &str, value: impl serde::Serialize) {
        self.parameters.insert(name.to_string(), serde_json::to_value(value).expect("serializable parameter"));
    }

    pub fn render(self, ctx: &Context, passed: bool, result: Value) -> String {
        let envelope = json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "seed": ctx.seed,
            "budgets": ctx.budgets,
            "inputs": Value::Object(self.inputs),
            "parameters": Value::Object(self.parameters),
            "passed": passed,
            "result": result,
        });
        match ctx.format {
            Format::Json => serde_json::to_string_pretty(&envelope).expect("json") + "\n",
            Format::Text => {
                let mut out = String::new();
                text(&mut out, "", &envelope, 0);
                out
            }
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(bytes.len() * 2), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    let child = if key.is_empty() {
        depth
    } else {
        let _ = writeln!(out, "{pad}{key}:");
        depth + 1
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                text(out, k, x, child);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                text(out, &format!("[{i}]"), x, child);
            }
        }
        _ => unreachable!(),
    }
}
