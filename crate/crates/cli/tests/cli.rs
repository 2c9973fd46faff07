use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn catembed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catembed"))
        .args(args)
        .env_remove("CATEMBED_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("catembed-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn shipped_catalog() -> Vec<Value> {
    serde_json::from_str(include_str!("../../core/data/catalog.json")).unwrap()
}

#[test]
fn verify_catalog_passes() {
    let o = catembed(&["verify-catalog"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), shipped_catalog().len());
    assert!(!text.contains("FAIL"));
}

#[test]
fn corrupted_lambda_is_reported() {
    let mut cat = shipped_catalog();
    cat[0]["lambda"]["entries"][0] = serde_json::json!({"coeffs": [[0, "3"]], "conductor": 1});
    let p = scratch("corrupt.json", &serde_json::to_string(&cat).unwrap());
    let o = catembed(&["verify-catalog", "--catalog", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let bad = text.lines().find(|l| l.starts_with("FAIL")).expect("a failing line");
    assert!(bad.contains("sqrt5/Q"), "{bad}");
    assert!(bad.len() > "FAIL sqrt5/Q: ".len(), "the failed condition is named: {bad}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), cat.len() - 1);
}

#[test]
fn empty_catalog_warns() {
    let p = scratch("empty.json", "[]");
    let o = catembed(&["verify-catalog", "--catalog", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty"));
}

#[test]
fn embed_bundle_round_trips() {
    let o = catembed(&["--format", "json", "embed", "--entry", "sqrt5/Q", "--matrix", r#"[["sqrt(5)", "0"], ["1", "1/2"]]"#]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"]["catalytic"], true);
    assert_eq!(v["checks"]["left_sided"], true);
    let bundle = scratch("bundle.json", &v["bundle"].to_string());
    let again = catembed(&[
        "--format", "json", "embed", "--bundle", bundle.to_str().unwrap(), "--matrix", r#"[["sqrt(5)", "0"], ["1", "1/2"]]"#,
    ]);
    assert!(again.status.success());
    let w: Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(w["phi"], v["phi"]);
}

#[test]
fn embed_circuit_over_egate() {
    let o = catembed(&["embed", "--entry", "omega3/Domega8", "--circuit", "(seq (par E I2) CX)"]);
    assert!(o.status.success(), "{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("catalytic: true"));
}

#[test]
fn qft_simulates_and_round_trips() {
    let o = catembed(&["qft", "2", "--simulate"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("probes pass"));
    let j = catembed(&["--format", "json", "qft", "3"]);
    let prog = scratch("qft3.json", &stdout(&j));
    let path = prog.to_str().unwrap();
    assert!(catembed(&["simulate", "--program", path, "--source", "qft:3"]).status.success());
    assert_eq!(catembed(&["simulate", "--program", path, "--source", "iqft:3"]).status.code(), Some(1));
    // Conjugated catalysts turn the program into the conjugate of its source, i.e. the inverse transform.
    assert!(catembed(&["simulate", "--program", path, "--source", "qft:3", "--galois", "-1"]).status.success());
}

#[test]
fn qasm_output() {
    let o = catembed(&["qft", "2", "--expand", "--qasm"]);
    let text = stdout(&o);
    assert!(text.starts_with("OPENQASM 2.0;"), "{text}");
    assert!(text.contains("ccx"));
}

#[test]
fn cost_reports_reduction() {
    let o = catembed(&["--format", "json", "cost", "egate", "--m", "1048576", "--epsilon", "1e-15"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reduction: f64 = v["reduction"].as_str().unwrap().parse().unwrap();
    assert!((reduction - 0.9809).abs() < 1e-4, "{reduction}");
    assert_eq!(catembed(&["cost", "egate", "--m", "4", "--epsilon", "0"]).status.code(), Some(2));
}

#[test]
fn classify_embedding_two() {
    let o = catembed(&["classify", "--candidate", "embedding-2", "--expect", "strong_not_linear"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(catembed(&["classify", "--candidate", "embedding-2", "--expect", "linear_consistent"]).status.code(), Some(1));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(catembed(&["embed", "--entry", "no/such", "--matrix", "[[1]]"]).status.code(), Some(2));
}
