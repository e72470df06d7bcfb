//! Deterministic report rendering: machine JSON under the
//! "wlskit-report-v1" schema, or a flat human-readable text view.

use std::path::Path;

use serde_json::{json, Map, Value};
use wlskit_core::error::Error;
use wlskit_core::json::to_string_pretty;

use crate::Format;

pub const SCHEMA: &str = "wlskit-report-v1";

pub fn report(command: &str, fields: Map<String, Value>) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(command));
    out.insert("status".into(), json!("ok"));
    for (k, v) in fields {
        out.insert(k, v);
    }
    Value::Object(out)
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn render_lines(prefix: &str, v: &Value, lines: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_lines(&key, val, lines);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let inner: Vec<String> = items.iter().map(render_scalar).collect();
            lines.push(format!("{prefix}: [{}]", inner.join(", ")));
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                render_lines(&format!("{prefix}[{i}]"), item, lines);
            }
        }
        _ => lines.push(format!("{prefix}: {}", render_scalar(v))),
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => to_string_pretty(report),
        Format::Text => {
            let mut lines = Vec::new();
            // the schema/command header is noise in the human view
            if let Value::Object(map) = report {
                for (k, v) in map {
                    if k == "schema" || k == "command" || k == "status" {
                        continue;
                    }
                    render_lines(k, v, &mut lines);
                }
            } else {
                render_lines("", report, &mut lines);
            }
            let mut s = lines.join("\n");
            s.push('\n');
            s
        }
    }
}

pub fn emit(report: &Value, format: Format, out: Option<&Path>) -> Result<(), Error> {
    let text = render(report, format);
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn emit_error(command: &str, e: &Error, format: Format, out: Option<&Path>) {
    let status = match e {
        Error::BudgetExceeded(_) => "budget-exceeded",
        _ => "error",
    };
    let doc = json!({
        "schema": SCHEMA,
        "command": command,
        "status": status,
        "error": e.to_string(),
    });
    match format {
        Format::Json => {
            let text = to_string_pretty(&doc);
            if let Some(path) = out {
                let _ = std::fs::write(path, &text);
            } else {
                print!("{text}");
            }
        }
        Format::Text => eprintln!("error: {e}"),
    }
}
