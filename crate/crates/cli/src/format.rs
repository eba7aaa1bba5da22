//! Report rendering.

use std::fmt::Write;

use dgkernel_core::report::Report;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Json,
    Text,
}

/// JSON is one compact line; text is indented key/value lines.
pub fn format_report(r: &Report, mode: Mode) -> String {
    match mode {
        Mode::Json => serde_json::to_string(r).expect("reports serialize"),
        Mode::Text => text(r),
    }
}

fn text(r: &Report) -> String {
    let mut s = String::new();
    let op = r.operation.as_deref().unwrap_or("?");
    let _ = writeln!(s, "{op}({}): {}", r.inputs.join(", "), r.verdict.as_deref().unwrap_or("-"));
    for (title, map) in [("checks", &r.checks), ("witnesses", &r.witnesses), ("certificates", &r.certificates)] {
        if map.is_empty() {
            continue;
        }
        let _ = writeln!(s, "  {title}:");
        for (k, v) in map {
            let _ = writeln!(s, "    {k}: {}", scalar_text(v));
        }
    }
    for a in &r.alarms {
        let _ = writeln!(s, "  ALARM: {a}");
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
