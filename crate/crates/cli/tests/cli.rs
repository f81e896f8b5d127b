use std::process::{Command, Output};

use serde_json::Value;

fn qwig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwig")).args(args).output().expect("qwig runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn wigner_table() {
    let o = qwig(&["wigner", "--weight", "1,0|0", "--lower", "0,0", "--kind", "lower"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let values: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["-q^-2", "1+q^-2"]);
    assert_eq!(v["sum"], "1");
}

#[test]
fn both_forms_agree() {
    let o = qwig(&["wigner", "--weight", "2,1|1", "--lower", "2,0", "--kind", "raise", "--coupled", "--form", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["forms_agree"], true);
}

#[test]
fn roots_and_invariants() {
    let v = json(&qwig(&["roots", "--weight", "1,0|0", "--variant", "adjoint"]));
    assert_eq!(v["classical"], serde_json::json!([1, -1, -2]));
    let v = json(&qwig(&["invariants", "--m", "1", "--n", "1", "--weight", "1,0"]));
    assert_eq!(v["invariants"][2]["name"], "c1");
    assert_eq!(v["invariants"][2]["value"], "1");
}

#[test]
fn csv_output() {
    let dir = std::env::temp_dir().join(format!("qwig-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let o = qwig(&["wigner", "--weight", "1|0", "--lower", "1", "--kind", "raise", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,r,value_string,value_json"));
    assert!(lines.next().unwrap().starts_with("1,,1/(q^2+1),"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let o = qwig(&["verify", "--m", "1", "--n", "1", "--suite", "qybe"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"], "PASS");

    // not a branching: a computation error reported as JSON
    let o = qwig(&["wigner", "--weight", "1,0|0", "--lower", "3,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"]["kind"], "branching");

    let o = qwig(&["wigner", "--weight", "1|0", "--lower", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["error"]["message"].as_str().unwrap().contains("coinciding roots"));

    assert_eq!(qwig(&["wigner", "--weight", "1|0"]).status.code(), Some(2));
    assert_eq!(qwig(&["verify", "--m", "1", "--n", "1", "--suite", "nope"]).status.code(), Some(1));
}
