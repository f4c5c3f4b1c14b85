mod common;

use std::process::Command;

use common::fixture_path;
use modr::cli::{run, Problem};
use serde_json::Value;

fn fx(name: &str) -> String {
    fixture_path(name).display().to_string()
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}{}", out.stdout, out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn weightings_loop2() {
    let v = ok(&["weightings", &fx("loop2")]);
    assert_eq!(v["result"]["count"]["base"], 9);
    assert_eq!(v["result"]["count"]["exp"], 1);
    assert_eq!(v["result"]["count"]["total"], 9);
    assert_eq!(v["result"]["weightings"].as_array().unwrap().len(), 9);
    let brute = ok(&["weightings", &fx("loop2"), "--method", "brute-force"]);
    let set = |x: &Value| {
        let mut items: Vec<String> = x.as_array().unwrap().iter().map(Value::to_string).collect();
        items.sort();
        items
    };
    assert_eq!(set(&brute["result"]["weightings"]), set(&v["result"]["weightings"]));
}

#[test]
fn emitted_weightings_reparse() {
    let v = ok(&["weightings", &fx("loop2")]);
    let base: Value = serde_json::from_str(&std::fs::read_to_string(fixture_path("loop2")).unwrap()).unwrap();
    for w in v["result"]["weightings"].as_array().unwrap() {
        let mut doc = base.clone();
        doc["weighting"] = w.clone();
        let p = Problem::parse(&doc.to_string()).unwrap();
        p.mod_type().unwrap();
    }
}

#[test]
fn maulik_and_sweep() {
    assert_eq!(ok(&["maulik", "--r", "3", "--s", "5"])["result"]["total"], "8");
    let v = ok(&["sweep", &fx("star_g1"), "--lambdas", "1..6"]);
    assert_eq!(v["result"]["k"], 1);
    assert_eq!(v["result"]["C"], "1");
    assert_eq!(v["result"]["certified"], true);
}

#[test]
fn degree_with_and_without_raw_exponent() {
    let v = ok(&["degree", &fx("two_external_g2"), "--lambda", "2"]);
    assert_eq!(v["result"]["exponent"], 5);
    assert!(v["result"].get("raw_exponent").is_none());
    let v = ok(&["degree", &fx("two_external_g2"), "--lambda", "2", "--raw-exponent"]);
    assert_eq!(v["result"]["raw_exponent"], 4);
}

#[test]
fn other_subcommands_succeed() {
    ok(&["validate", &fx("loop2")]);
    ok(&["classify", &fx("star_g1")]);
    ok(&["dims", &fx("trivial_g1"), &fx("star_g1")]);
    ok(&["sh", &fx("gcd"), "--method", "exhaustive"]);
    ok(&["lift", &fx("cycle2"), "--lambdas", "2,3"]);
    ok(&["poly", &fx("trivial_g1"), &fx("star_g1"), "--genus1"]);
    let v = ok(&["oracle", &fx("gcd")]);
    assert_eq!(v["result"]["all_passed"], true);
}

#[test]
fn sh_kernel_claim() {
    let v = ok(&["sh", &fx("gcd"), "--lambda", "3"]);
    assert_eq!(v["result"]["order"], 2);
    assert_eq!(v["result"]["kernel_order"], 1);
    assert!(v["warnings"].is_array() || v["result"].get("kernel_claim").is_some());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["weightings", &fx("loop2"), "--cap", "3"]).code, 2);
    assert_eq!(run(&["weightings", "/nonexistent.json"]).code, 3);
    assert_eq!(run(&["bogus"]).code, 3);
    let out = run(&["validate", &fx("loop2"), "--r"]);
    assert_eq!(out.code, 3);
}

#[test]
fn validation_failure_exits_one() {
    let dir = std::env::temp_dir().join(format!("modr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(fixture_path("loop2")).unwrap()).unwrap();
    doc["r"] = 5.into();
    doc["contact"]["legs"][0] = serde_json::json!({"s": 5, "a": "4/5"});
    doc["weighting"] = serde_json::json!({"e1": 1, "e2": 3});
    let path = dir.join("small_r.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["valid"], false);
}

#[test]
fn binary_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_modr");
    let a = Command::new(exe).args(["weightings", &fx("loop2")]).output().unwrap();
    let b = Command::new(exe).args(["weightings", &fx("loop2")]).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(exe).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("usage"));
}
