//! Runs the built binary and checks JSON against the shipped schemas.
//!
//! The validator covers the keywords the schema files use: `type`, `enum`,
//! `required`, `properties`, `additionalProperties`, `items`, `minimum` and
//! the one `pattern` (canonical rational strings).

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

pub const RATIONAL_PATTERN: &str = "^-?[0-9]+(/[0-9]+)?$";

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lahbell"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

pub fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).expect("schema is valid JSON")
}

fn is_rational(s: &str) -> bool {
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let s = s.strip_prefix('-').unwrap_or(s);
    match s.split_once('/') {
        Some((num, den)) => digits(num) && digits(den),
        None => digits(s),
    }
}

fn type_matches(name: &str, value: &Value) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        // Integers past u64 parse as f64; the schema only asks for a whole number.
        "integer" => value.is_i64() || value.is_u64() || value.as_f64().is_some_and(|x| x.fract() == 0.0),
        "number" => value.is_number(),
        "null" => value.is_null(),
        "boolean" => value.is_boolean(),
        other => panic!("unsupported type {other}"),
    }
}

pub fn validate(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    let fail = |why: String| Err(format!("{path}: {why}"));
    if let Some(t) = schema.get("type") {
        let names: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => panic!("bad type keyword"),
        };
        if !names.iter().any(|n| type_matches(n, value)) {
            return fail(format!("{value} is not of type {t}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return fail(format!("{value} not in {options:?}"));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), value.as_f64()) {
        if x < min {
            return fail(format!("{x} below minimum {min}"));
        }
    }
    if let (Some(pattern), Some(s)) = (schema.get("pattern").and_then(Value::as_str), value.as_str()) {
        assert_eq!(pattern, RATIONAL_PATTERN, "unsupported pattern");
        if !is_rational(s) {
            return fail(format!("{s:?} is not a canonical rational"));
        }
    }
    if let Some(object) = value.as_object() {
        for key in schema
            .get("required")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            let key = key.as_str().expect("string key");
            if !object.contains_key(key) {
                return fail(format!("missing {key}"));
            }
        }
        let properties = schema.get("properties").and_then(Value::as_object);
        for (key, item) in object {
            let sub = match properties.and_then(|p| p.get(key)) {
                Some(sub) => sub,
                None => match schema.get("additionalProperties") {
                    Some(Value::Bool(false)) => return fail(format!("unexpected property {key}")),
                    Some(sub @ Value::Object(_)) => sub,
                    _ => continue,
                },
            };
            validate(sub, item, &format!("{path}.{key}"))?;
        }
    }
    if let (Some(items), Some(array)) = (schema.get("items"), value.as_array()) {
        for (i, item) in array.iter().enumerate() {
            validate(items, item, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

pub fn assert_valid(schema_name: &str, value: &Value) {
    if let Err(e) = validate(&schema(schema_name), value, "$") {
        panic!("{schema_name}: {e}\n{value}");
    }
}
