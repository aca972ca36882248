//! Shared helpers for integration tests: running the CLI binary and
//! validating JSON outputs against the shipped schema files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbern"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

/// Validate a value against the subset of JSON Schema the shipped files use:
/// type, required, properties, additionalProperties: false, items, enum and
/// $ref to a sibling schema file.
pub fn validate(value: &Value, schema: &Value, dir: &Path) -> Result<(), String> {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let text = std::fs::read_to_string(dir.join(reference))
            .map_err(|e| format!("cannot read {reference}: {e}"))?;
        let referred: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        return validate(value, &referred, dir);
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{value} not in enum {allowed:?}"));
        }
    }
    match schema.get("type").and_then(Value::as_str) {
        Some("object") => {
            let obj = value.as_object().ok_or_else(|| format!("{value} is not an object"))?;
            let props = schema.get("properties").and_then(Value::as_object);
            if let Some(required) = schema.get("required").and_then(Value::as_array) {
                for name in required {
                    let name = name.as_str().expect("required name");
                    if !obj.contains_key(name) {
                        return Err(format!("missing required field {name}"));
                    }
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in obj.keys() {
                    if !props.map_or(false, |p| p.contains_key(key)) {
                        return Err(format!("unexpected field {key}"));
                    }
                }
            }
            if let Some(props) = props {
                for (key, sub) in props {
                    if let Some(v) = obj.get(key) {
                        validate(v, sub, dir).map_err(|e| format!("{key}: {e}"))?;
                    }
                }
            }
            Ok(())
        }
        Some("array") => {
            let arr = value.as_array().ok_or_else(|| format!("{value} is not an array"))?;
            if let Some(items) = schema.get("items") {
                for (i, v) in arr.iter().enumerate() {
                    validate(v, items, dir).map_err(|e| format!("[{i}]: {e}"))?;
                }
            }
            Ok(())
        }
        Some("string") => value.as_str().map(|_| ()).ok_or_else(|| format!("{value} is not a string")),
        Some("integer") => {
            if value.is_i64() || value.is_u64() {
                Ok(())
            } else {
                Err(format!("{value} is not an integer"))
            }
        }
        Some("number") => value.as_f64().map(|_| ()).ok_or_else(|| format!("{value} is not a number")),
        Some("boolean") => value.as_bool().map(|_| ()).ok_or_else(|| format!("{value} is not a boolean")),
        Some(other) => Err(format!("unsupported schema type {other}")),
        None => Ok(()),
    }
}

pub fn assert_matches_schema(json_text: &str, schema_file: &str) {
    let dir = schema_dir();
    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join(schema_file)).expect("schema file exists"),
    )
    .expect("schema parses");
    let value: Value = serde_json::from_str(json_text).expect("output is JSON");
    if let Err(e) = validate(&value, &schema, &dir) {
        panic!("{json_text} does not match {schema_file}: {e}");
    }
}
