//! Pins the JSON schema of `audit` and `bounds`.

use std::path::Path;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["cmreg"];
    full.extend_from_slice(args);
    let code = cmreg::cli::run(full, &mut out, &mut err);
    assert!(err.is_empty(), "{}", String::from_utf8_lossy(&err));
    (code, String::from_utf8(out).unwrap())
}

fn golden(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn check(args: &[&str], name: &str) {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    let (code, out) = run(args);
    assert_eq!(code, 0);
    let got: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(got, golden(name), "output of {args:?} drifted from {name}");
}

#[test]
fn audit_three_variables() {
    check(&["audit", "--json", "tests/data/cyclic_xx_xy_3vars.pres"], "audit_cyclic_3vars.json");
}

#[test]
fn audit_two_variables() {
    check(&["audit", "--json", "tests/data/cyclic_xx_xy_2vars.pres"], "audit_cyclic_2vars.json");
}

#[test]
fn bounds_three_variables() {
    check(&["bounds", "--json", "tests/data/cyclic_xx_xy_3vars.pres"], "bounds_cyclic_3vars.json");
    assert_eq!(golden("bounds_cyclic_3vars.json")["values"]["cm_regularity"], Value::from(6));
}

#[test]
fn top_level_keys() {
    let doc = golden("audit_cyclic_3vars.json");
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["instance", "computed", "bounds", "verdicts", "values"]);
}
