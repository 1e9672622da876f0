//! End-to-end runs of the `qcpu` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qcpu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcpu"))
        .args(args)
        .env_remove("QCPU_TOLERANCE")
        .output()
        .expect("spawn qcpu")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn deutsch_prints_classification() {
    let cases = [
        ("f1", "constant (output 0)"),
        ("f2", "constant (output 0)"),
        ("f3", "balanced (output 1)"),
        ("f4", "balanced (output 1)"),
    ];
    for (f, line) in cases {
        let out = qcpu(&["deutsch", "--f", f]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).trim_end(), line);
    }
}

#[test]
fn shor_report_contains_factors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = qcpu(&[
        "shor",
        "--n",
        "15",
        "--a",
        "7",
        "--seed",
        "42",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains(r#""factors":[3,5]"#), "{text}");
    let v = read_json(&path);
    assert_eq!(v["params"]["k"], 8);
    assert_eq!(v["seed"], 42);
    let total: f64 = v["probabilities"]
        .as_object()
        .unwrap()
        .values()
        .map(|p| p.as_f64().unwrap())
        .sum();
    assert!((total - 1.0).abs() <= 1e-9);
    assert!(v.get("wall_time_ms").is_none());
}

#[test]
fn timing_flag_adds_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = qcpu(&[
        "deutsch",
        "--f",
        "f1",
        "--timing",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(read_json(&path)["wall_time_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn grover_beyond_cap_exits_2() {
    let out = qcpu(&["grover", "--k", "10", "--target", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cap"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn grover_report_fields() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let out = qcpu(&[
        "grover",
        "--k",
        "2",
        "--target",
        "1",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&path);
    assert_eq!(v["outcome"]["sampled"], 1);
    assert_eq!(v["params"]["iterations"], 1);
    assert_eq!(v["amplitudes"].as_array().unwrap().len(), 4);
    assert!(v["amplitudes"][0][0].is_number());
}

#[test]
fn verify_qcpu_core_passes() {
    let out = qcpu(&[
        "verify",
        "--suite",
        "qcpu-core",
        "--trials",
        "50",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains(", 0 failures"));
}

#[test]
fn verify_qft_range() {
    let out = qcpu(&[
        "verify",
        "--suite",
        "qft",
        "--k-range",
        "1..4",
        "--tolerance",
        "1e-12",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("suite qft: 16 cases, 0 failures"));
}

#[test]
fn injected_fault_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let out = qcpu(&[
        "verify",
        "--suite",
        "qcpu-core",
        "--trials",
        "5",
        "--inject-fault",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = read_json(&path);
    assert_eq!(v["outcome"]["passed"], false);
    assert!(!v["outcome"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_suite_exits_2() {
    let out = qcpu(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("nope"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(qcpu(&["deutsch", "--f", "f9"]).status.code(), Some(2));
    assert_eq!(
        qcpu(&["shor", "--n", "15", "--a", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qcpu(&["grover", "--k", "3", "--target", "8"]).status.code(),
        Some(2)
    );
    assert_eq!(qcpu(&["qft", "--k", "0"]).status.code(), Some(2));
    assert_eq!(
        qcpu(&["verify", "--k-range", "4..2"]).status.code(),
        Some(2)
    );
}

#[test]
fn tolerance_env_fallback() {
    let out = Command::new(env!("CARGO_BIN_EXE_qcpu"))
        .args(["verify", "--suite", "qft", "--k-range", "3..3"])
        .env("QCPU_TOLERANCE", "1e-30")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_qcpu"))
        .args([
            "verify",
            "--suite",
            "qft",
            "--k-range",
            "3..3",
            "--tolerance",
            "1e-12",
        ])
        .env("QCPU_TOLERANCE", "1e-30")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("n.dot");
    let out = qcpu(&[
        "export",
        "--algorithm",
        "grover",
        "--k",
        "2",
        "--target",
        "1",
        "--format",
        "dot",
        "--out",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("Q(R2)") && text.contains("CC†"));

    let txt = dir.path().join("n.txt");
    let out = qcpu(&[
        "export",
        "--algorithm",
        "qft",
        "--k",
        "2",
        "--format",
        "text",
        "--out",
        txt.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&txt)
            .unwrap()
            .matches("factor f_")
            .count(),
        16
    );

    let bad = qcpu(&[
        "export",
        "--algorithm",
        "qft",
        "--format",
        "svg",
        "--out",
        txt.to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn unwritable_json_path_names_the_path() {
    let out = qcpu(&["deutsch", "--f", "f1", "--json", "/nonexistent-dir/r.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("/nonexistent-dir/r.json"));
}
