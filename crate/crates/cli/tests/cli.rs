use std::process::{Command, Output};

use serde_json::Value;

const G0C3: &str = r#"{"compose":[{"matrix":[[1,-1,-1,-1],[-1,1,-1,-1],[-1,-1,1,-1],[-1,-1,-1,1]]},{"cremona":3}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cremona")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn degrees_of_g0c3() {
    let out = run(&["degrees", "--map", G0C3, "--n", "6"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"degrees":[1,3,9,19,33,51,73]}"#);
}

#[test]
fn degrees_csv_and_lattice() {
    let out = run(&["degrees", "--map", "g0theta", "--n", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "n,degree\n0,1\n1,2\n2,4\n3,7");
    let v = json(&["degrees", "--map", "typeC", "--n", "6", "--lattice"]);
    assert_eq!(v["degrees"], serde_json::json!([1, 3, 9, 27, 73, 195, 513]));
}

#[test]
fn group_counts() {
    let v = json(&["group", "enumerate", "--count-only"]);
    assert_eq!(v, serde_json::json!({"total": 576, "by_type": {"A": 192, "B": 192, "C": 192}}));
    let v = json(&["group", "classify", "--matrix", "[[0,1,0,0],[1,0,0,0],[0,0,1,0],[0,0,0,1]]"]);
    assert_eq!(v["type"], "B");
    assert_eq!(v["order"], 2);
}

#[test]
fn fit_usage_and_result() {
    let out = run(&["fit", "--sequence", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&["fit", "--sequence", "1,3,9,19,33,51,73,99,129"]);
    assert_eq!(v["generating_function"]["numerator"], serde_json::json!(["1", "0", "3"]));
    assert_eq!(v["generating_function"]["denominator"], serde_json::json!(["1", "-3", "3", "-1"]));
    assert_eq!(v["entropy"]["zero"], true);
}

#[test]
fn exact_entropy_type_c() {
    let v = json(&["entropy", "--map", "typeC", "--exact"]);
    assert_eq!(v["entropy"]["min_poly"], serde_json::json!(["1", "-3", "1"]));
    let approx = v["entropy"]["approx"].as_f64().unwrap();
    assert!((approx - 0.962_423_650_1).abs() < 1e-6);
    assert_eq!(run(&["entropy", "--map", "euler", "--exact"]).status.code(), Some(2));
}

#[test]
fn orbit_and_invariant() {
    let v = json(&["orbit", "--map", "g0c3", "--plane", "x1"]);
    assert_eq!(v["chain"], serde_json::json!([[1, -1, -1, -1], [1, 0, 0, 0]]));
    assert_eq!(v["outcome"], "confined_into_base_locus");
    let v = json(&["invariant", "check", "--map", "cremona", "--function", "x1*x2/(x3*x4)"]);
    assert_eq!(v["class"], "k:2");
}

#[test]
fn covariance_outcomes() {
    let v = json(&["covariance", "check", "--map", G0C3, "--system", "sigmaP", "--divisor", "1,1,1,1"]);
    assert_eq!(v["covariant"], true);
    assert_eq!(run(&["covariance", "check", "--map", "g0c3", "--system", "sigmaB"]).status.code(), Some(1));
    assert_eq!(run(&["covariance", "check", "--map", "g0c3", "--system", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["covariance", "check", "--map", "g0c3", "--system", "sigmaP", "--divisor", "2,2,2,2"]).status.code(), Some(2));
}

#[test]
fn euler_verification() {
    let v = json(&["euler", "--a", "1,4,9", "--h", "1", "--verify", "all"]);
    assert_eq!(v["pass"], true);
    assert!(v["checks"].as_object().unwrap().values().all(|b| b == true));
    assert_eq!(run(&["euler", "--a", "2,4,9", "--h", "1"]).status.code(), Some(2));
}

#[test]
fn reproduce_ids() {
    let v = json(&["reproduce", "group-counts"]);
    assert_eq!(v["pass"], true);
    let out = run(&["reproduce", "tables-B"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["reproduce", "nope"]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["degrees", "--map", "{\"bogus\":1}"]).status.code(), Some(2));
    assert_eq!(run(&["degrees"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["euler", "--verify", "all"]).stdout;
    let b = run(&["euler", "--verify", "all"]).stdout;
    assert_eq!(a, b);
}
