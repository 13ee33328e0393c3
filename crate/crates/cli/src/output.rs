use std::fmt::Write;

use clap::ValueEnum;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// Exact integers become JSON numbers when they fit in 64 bits, strings
/// otherwise.
pub fn big(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

pub fn big_signed(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

/// Renders records as JSON lines, or as tab-separated tables with a header
/// row each time the set of keys changes.
pub fn render(records: &[Map<String, Value>], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", Value::Object(r.clone())).expect("write to string");
            }
        }
        Format::Tsv => {
            let mut header: Option<Vec<&String>> = None;
            for r in records {
                let keys: Vec<&String> = r.keys().collect();
                if header.as_ref() != Some(&keys) {
                    let line: Vec<&str> = keys.iter().map(|k| k.as_str()).collect();
                    writeln!(out, "{}", line.join("\t")).expect("write to string");
                    header = Some(keys);
                }
                let cells: Vec<String> = r.values().map(cell).collect();
                writeln!(out, "{}", cells.join("\t")).expect("write to string");
            }
        }
    }
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use serde_json::json;

    use super::*;

    fn obj(v: Value) -> Map<String, Value> {
        v.as_object().unwrap().clone()
    }

    #[test]
    fn tsv_headers_follow_key_changes() {
        let records = vec![
            obj(json!({"a": 1, "b": "x"})),
            obj(json!({"a": 2, "b": "y"})),
            obj(json!({"c": [1, 2]})),
        ];
        assert_eq!(render(&records, Format::Tsv), "a\tb\n1\tx\n2\ty\nc\n[1,2]\n");
        assert_eq!(render(&records[..1], Format::Json), "{\"a\":1,\"b\":\"x\"}\n");
    }

    #[test]
    fn big_numbers() {
        assert_eq!(big(&BigUint::from(4u32)), json!(4));
        let huge = BigUint::from(u64::MAX) * 2u32;
        assert_eq!(big(&huge), json!(huge.to_string()));
    }
}
