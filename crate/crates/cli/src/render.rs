//! Rendering of serialisable reports. JSON is the canonical form; the human
//! and CSV views are flattened `path value` listings of the same tree.

use serde::Serialize;
use serde_json::Value;

use crate::Format;

pub fn render<T: Serialize>(report: &T, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Human => flatten(&serde_json::to_value(report)?)
            .into_iter()
            .map(|(k, v)| format!("{k}: {v}\n"))
            .collect(),
        Format::Csv => std::iter::once("key,value\n".to_string())
            .chain(
                flatten(&serde_json::to_value(report)?)
                    .into_iter()
                    .map(|(k, v)| format!("{},{}\n", csv_field(&k), csv_field(&v))),
            )
            .collect(),
    })
}

fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(value, String::new(), &mut out);
    out
}

fn walk(value: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                walk(v, join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                walk(v, join(&i.to_string()), out);
            }
        }
        Value::String(s) => out.push((path, s.clone())),
        other => out.push((path, other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
