use serde_json::Value;
use std::process::{Command, Output};

fn quniv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quniv")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn analyze_inline_and_file() {
    let sum3 = r#"{"field":{"kind":"Q"},"gram":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#;
    let out = quniv(&["analyze", sum3, "--bound", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let places = &r["analysis"]["local"]["places"];
    assert_eq!(places["2"]["universal"], false);
    assert_eq!(r["analysis"]["global"]["status"], "NotUniversal");

    let dir = std::env::temp_dir().join(format!("quniv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("xy.json");
    std::fs::write(&path, r#"{"field":{"kind":"Q"},"gram":[["0","1/2"],["1/2","0"]]}"#).unwrap();
    let r = json(&quniv(&["analyze", path.to_str().unwrap()]));
    assert_eq!(r["analysis"]["local"]["universal"], true);
    assert_eq!(r["analysis"]["global"]["status"], "Universal");
}

#[test]
fn restricted_and_oracle_places() {
    let f = r#"{"field":{"kind":"Q"},"gram":[["1","0","0"],["0","1","0"],["0","0","-77"]]}"#;
    let r = json(&quniv(&["analyze", f, "--places", "7", "--oracle", "--bound", "20"]));
    let places = r["analysis"]["local"]["places"].as_object().unwrap();
    assert_eq!(places.len(), 2);
    assert_eq!(places["7"]["rule"], "oracle");
    assert_eq!(places["7"]["universal"], false);
}

#[test]
fn construct_output_reparses_without_loss() {
    let out = quniv(&["construct", "binary", "--d", "-5", "--ideal", "2,1+w", "--bound", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["lattice"]["gram"], serde_json::json!([["1+w", "5/2"], ["5/2", "1-w"]]));
    let lattice = serde_json::to_string(&r["lattice"]).unwrap();
    let again = json(&quniv(&["analyze", &lattice, "--bound", "100"]));
    assert_eq!(again["analysis"], r["analysis"]);

    let r = json(&quniv(&["construct", "counterexample", "--N", "5"]));
    assert_eq!(r["lattice"]["gram"][2][2], "-77");
    assert_eq!(r["analysis"]["global"]["proof_kind"], "LocalFailure");

    let r = json(&quniv(&["construct", "ternary", "--d", "-5", "--p", "13", "--bound", "100"]));
    assert_eq!(r["lattice"]["gram"][2][2], "-676");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["construct", "binary", "--d", "-5", "--ideal", "3,1+w", "--bound", "100"];
    assert_eq!(quniv(&args).stdout, quniv(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(quniv(&["analyze", "{not json"]).status.code(), Some(2));
    assert_eq!(quniv(&["analyze", "/nonexistent/lattice.json"]).status.code(), Some(2));
    let bad_norm = r#"{"field":{"kind":"Q"},"gram":[["1/3","0"],["0","1"]]}"#;
    assert_eq!(quniv(&["analyze", bad_norm]).status.code(), Some(2));
    assert_eq!(quniv(&["construct", "ternary", "--d", "-5", "--p", "29"]).status.code(), Some(2));
    assert_eq!(quniv(&["construct", "counterexample", "--N", "0"]).status.code(), Some(2));
    assert_eq!(quniv(&["verify-paper", "--only", "nothing"]).status.code(), Some(2));
    assert_eq!(quniv(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_paper_subset_writes_json() {
    let path = std::env::temp_dir().join(format!("quniv-verify-{}.json", std::process::id()));
    let out = quniv(&["verify-paper", "--only", "4,genus", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.contains("PASS")));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
}
