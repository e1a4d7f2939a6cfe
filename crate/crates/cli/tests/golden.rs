//! Pins the JSON report layout. Set `UPDATE_GOLDEN=1` to rewrite the files.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;

use serde_json::Value;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn check(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} differs from golden file");
}

/// Every `path: type` pair in a document; array elements share `[]`.
fn schema(v: &Value) -> String {
    fn walk(v: &Value, path: String, out: &mut BTreeSet<String>) {
        let ty = match v {
            Value::Null => "null",
            Value::Bool(_) => "bool",
            Value::Number(_) => "number",
            Value::String(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        };
        out.insert(format!("{path}: {ty}"));
        match v {
            Value::Array(xs) => xs.iter().for_each(|x| walk(x, format!("{path}[]"), out)),
            Value::Object(m) => m
                .iter()
                .for_each(|(k, x)| walk(x, format!("{path}.{k}"), out)),
            _ => {}
        }
    }
    let mut out = BTreeSet::new();
    walk(v, "$".into(), &mut out);
    out.into_iter().map(|l| l + "\n").collect()
}

/// Top-level key order as written.
fn key_order(raw: &str) -> Vec<String> {
    raw.lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap().to_string())
        .collect()
}

#[test]
fn lemma_report_is_byte_stable() {
    let o = common::run(&[
        "lemma", "--fn", "u*v", "--rect", "0,2,0,1", "--point", "0,0",
    ]);
    check("lemma.json", &common::stdout(&o));
}

#[test]
fn verbatim_lemma_report_is_byte_stable() {
    let o = common::run(&[
        "lemma", "--fn", "1", "--rect", "0,2,0,1", "--point", "1,0.5", "--mode", "verbatim",
    ]);
    check("lemma_verbatim.json", &common::stdout(&o));
}

#[test]
fn chain_report_is_byte_stable() {
    let o = common::run(&["chain", "--catalog", "bilinear", "--rect", "0,1,0,1"]);
    check("chain.json", &common::stdout(&o));
}

#[test]
fn bound_and_scan_schemas() {
    let b = common::run(&[
        "bound",
        "--catalog",
        "quartic",
        "--rect",
        "0,2,0,1",
        "--theorem",
        "t3",
        "--certify",
    ]);
    check("bound.schema", &schema(&common::json(&b)));
    let s = common::run(&[
        "scan",
        "--catalog",
        "quartic",
        "--rect",
        "0,2,0,1",
        "--theorem",
        "t2",
        "--grid",
        "3",
    ]);
    check("scan.schema", &schema(&common::json(&s)));
    let order = key_order(&common::stdout(&s));
    assert_eq!(
        order,
        [
            "tool",
            "version",
            "timestamp",
            "command",
            "config",
            "results",
            "summary",
            "notes"
        ]
    );
}
