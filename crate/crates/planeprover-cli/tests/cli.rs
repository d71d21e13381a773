//! End-to-end checks of the command-line interface: exit codes, JSON schema
//! and the script checker.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planeprover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn prove_single_theorem() {
    let out = run(&["prove", "Napoleon"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Napoleon: proved"));
}

#[test]
fn unknown_theorem_exits_2() {
    let out = run(&["prove", "NoSuchTheorem"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_exits_2() {
    let out = run(&["prove", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certificate_counts_as_success() {
    let out = run(&["prove", "Lehmus", "CentroidExists"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("Lehmus: certificate"));
    assert!(text.contains("CentroidExists: proved"));
}

#[test]
fn json_schema_is_stable() {
    let out = run(&["prove", "Ceva", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert!(v["version"].is_string());
    assert!(v["input_digest"].is_string());
    let entry = &v["entries"][0];
    assert_eq!(entry["id"], "Ceva");
    assert_eq!(entry["verdict"], "proved");
    assert!(entry["millis"].is_number());
    assert!(entry["degree"].is_number());
    assert!(entry["nterms"].is_number());
    // Two runs: identical verdicts and digests, timings may differ.
    let again = run(&["prove", "Ceva", "--json"]);
    let w: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(v["input_digest"], w["input_digest"]);
    assert_eq!(v["entries"][0]["verdict"], w["entries"][0]["verdict"]);
}

#[test]
fn list_has_25_entries() {
    let out = run(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 25);
    let json = run(&["list", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 25);
}

#[test]
fn check_proved_refuted_and_error_fixtures() {
    let dir = std::env::temp_dir();
    let proved = dir.join("planeprover_proved.geo");
    std::fs::write(&proved, "point A, B;\nassert is_zero(sub(de_sq(A, B), de_sq(B, A)));\n")
        .unwrap();
    let out = run(&["check", proved.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("proved"));

    let refuted = dir.join("planeprover_refuted.geo");
    std::fs::write(&refuted, "point A, B;\nassert is_zero(de_sq(midpoint(A, B), A));\n").unwrap();
    let out = run(&["check", refuted.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("refuted"));

    let syntax = dir.join("planeprover_syntax.geo");
    std::fs::write(&syntax, "point A;;\n").unwrap();
    let out = run(&["check", syntax.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));

    let out = run(&["check", dir.join("planeprover_missing.geo").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn napoleon_script_through_check() {
    let path = std::env::temp_dir().join("planeprover_napoleon.geo");
    std::fs::write(
        &path,
        "point A, B, C;\nassert equilateral(cet(A, B), cet(B, C), cet(C, A));\n",
    )
    .unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("assertion-1: proved"));
}

#[test]
fn oracle_subcommand() {
    let out = run(&["oracle", "CentroidExists", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("oracle true"));
    let json = run(&["oracle", "Simson", "--seed", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["holds"], true);
}

#[test]
fn trace_prints_intermediates() {
    let out = run(&["prove", "CentroidExists", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("trace: [CentroidExists] line:"));
}

#[test]
fn max_terms_guardrail_reports_resource_error() {
    let out = run(&["prove", "Feuerbach", "--max-terms", "50"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("error"));
}

#[test]
fn env_var_overrides_the_guardrail() {
    let out = Command::new(env!("CARGO_BIN_EXE_planeprover"))
        .args(["prove", "Feuerbach"])
        .env("PLANEPROVER_MAX_TERMS", "50")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("error"));
}
