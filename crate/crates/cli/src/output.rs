//! Deterministic JSON and CSV emission.

use serde_json::{Map, Value};

pub const SCHEMA: &str = "dualkit/1";

/// Rounds to 12 significant digits; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(format!("{x}"));
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

/// Envelope `{schema, command, config, result}`.
pub fn document(command: &str, config: Map<String, Value>, result: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("schema".into(), Value::String(SCHEMA.into()));
    doc.insert("command".into(), Value::String(command.into()));
    doc.insert("config".into(), Value::Object(config));
    doc.insert("result".into(), result);
    Value::Object(doc)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Header line plus one line per row.
pub fn csv(header: &[&str], rows: &[Vec<Value>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(num(1.0 / 3.0).to_string(), "0.333333333333");
        assert_eq!(num(2.0).to_string(), "2.0");
        assert_eq!(num(f64::INFINITY), Value::String("inf".into()));
        assert_eq!(num(-1.234567890123456e-7).to_string(), "-1.23456789012e-7");
    }

    #[test]
    fn csv_has_header() {
        let s = csv(&["r", "g", "kind"], &[vec![num(1.0), num(0.5), Value::from("ellipse")]]);
        assert_eq!(s, "r,g,kind\n1.0,0.5,ellipse\n");
    }
}
