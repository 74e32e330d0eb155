use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn schema() -> Value {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/schema/result.schema.json");
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// Writes `text` to a fresh file under the target temp directory.
fn temp_ideal(name: &str, text: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], file: &Path) -> (Value, i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tropical"))
        .args(&args[..1])
        .arg(file)
        .args(&args[1..])
        .arg("--json")
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    let errors = validate(&schema(), &doc, "$");
    assert!(errors.is_empty(), "schema violations: {errors:?}");
    (doc, out.status.code().unwrap(), stdout)
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        _ => false,
    }
}

/// The schema keywords used by the result schema: type, enum, required,
/// properties, additionalProperties, items, minimum.
fn validate(schema: &Value, v: &Value, path: &str) -> Vec<String> {
    let mut errs = Vec::new();
    if let Some(t) = schema.get("type") {
        let ok = match t {
            Value::String(s) => type_matches(s, v),
            Value::Array(ts) => ts.iter().filter_map(|t| t.as_str()).any(|t| type_matches(t, v)),
            _ => true,
        };
        if !ok {
            errs.push(format!("{path}: expected {t}, got {v}"));
            return errs;
        }
    }
    if let Some(e) = schema.get("enum").and_then(|e| e.as_array()) {
        if !e.contains(v) {
            errs.push(format!("{path}: {v} not in {e:?}"));
        }
    }
    if let (Some(m), Some(x)) = (schema.get("minimum").and_then(|m| m.as_i64()), v.as_i64()) {
        if x < m {
            errs.push(format!("{path}: {x} < {m}"));
        }
    }
    if let Some(obj) = v.as_object() {
        for k in schema.get("required").and_then(|r| r.as_array()).into_iter().flatten() {
            if !obj.contains_key(k.as_str().unwrap()) {
                errs.push(format!("{path}: missing {k}"));
            }
        }
        let props = schema.get("properties").and_then(|p| p.as_object());
        for (k, x) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(s) => errs.extend(validate(s, x, &format!("{path}.{k}"))),
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => errs.push(format!("{path}: unexpected key {k}")),
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            errs.extend(validate(items, x, &format!("{path}[{i}]")));
        }
    }
    errs
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn zerodim_lists_four_points() {
    let (doc, code, _) = run(&["zerodim"], &fixture("three_levels.ideal"));
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "ok");
    let mut points: Vec<Vec<String>> = doc["outputs"]["points"].as_array().unwrap().iter().map(strings).collect();
    points.sort();
    let want: Vec<Vec<String>> = [["-1", "-1", "2"], ["-1", "1", "0"], ["0", "-1", "1"], ["0", "0", "0"]]
        .iter()
        .map(|p| p.iter().map(|s| s.to_string()).collect())
        .collect();
    assert_eq!(points, want);
    assert_eq!(doc["verification"]["passed"], true);
    assert_eq!(doc["verification"]["checked"], 4);
}

#[test]
fn padic_zerodim_with_trace() {
    let (doc, code, _) = run(&["zerodim", "--trace"], &fixture("padic_digits.ideal"));
    assert_eq!(code, 0);
    assert_eq!(doc["field"], "padic 3");
    assert!(doc["outputs"]["traces"].is_array());
}

#[test]
fn line_link_has_valency_three() {
    let (doc, code, _) = run(&["link"], &fixture("line.ideal"));
    assert_eq!(code, 0);
    assert_eq!(doc["outputs"]["valency"], 3);
    assert!(doc["outputs"]["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn seeded_point_succeeds() {
    let (doc, code, _) = run(&["point", "--seed", "7"], &fixture("grass25.ideal"));
    assert_eq!(code, 0);
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["outputs"]["point"].as_array().unwrap().len(), 10);
    assert_eq!(doc["verification"]["passed"], true);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["point", "--seed", "11", "--jobs", "1"], &fixture("grass25.ideal")).2;
    let b = run(&["point", "--seed", "11", "--jobs", "4"], &fixture("grass25.ideal")).2;
    assert_eq!(a, b);
}

#[test]
fn composite_modulus_is_an_error() {
    let f = temp_ideal("composite.ideal", "field padic 4\nring x\ngens\nx - 2\n");
    let (doc, code, _) = run(&["zerodim"], &f);
    assert_eq!(code, 1);
    assert_eq!(doc["status"], "error");
    assert!(doc["outputs"].is_null());
}

#[test]
fn syntax_error_is_reported() {
    let f = temp_ideal("syntax.ideal", "field puiseux\nring x y\ngens\nx + * y\n");
    let (doc, code, _) = run(&["zerodim"], &f);
    assert_eq!(code, 1);
    assert!(doc["error"]["message"].as_str().unwrap().contains('4'));
}

#[test]
fn failed_verification_exits_two() {
    let f = temp_ideal("bad_weight.ideal", "field puiseux\nring x1 x2 x3\ngens\nx1 + x2 + x3\nweights\nbad = 0,1,2\n");
    let (doc, code, _) = run(&["verify"], &f);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], "verification_failed");
    assert_eq!(doc["verification"]["passed"], false);
    let (_, ok, _) = run(&["verify", "--weight", "1,1,1"], &fixture("line.ideal"));
    assert_eq!(ok, 0);
}

#[test]
fn exhausted_attempts_are_a_resource_limit() {
    let (doc, code, _) = run(&["point", "--weight", "1,1,1,1,1,1,1"], &fixture("grass25.ideal"));
    assert_eq!(doc["status"], "resource_limit", "{doc}");
    assert_eq!(code, 3);
}
