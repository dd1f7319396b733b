//! Runs the binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

use anomaly_forms::verifier::{JsonReport, Status};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anomaly-forms")).args(args).env_remove("ANOMALY_FORMS_OUT_DIR").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn expand_prints_anchor_series() {
    let out = run(&["expand", "E4^2*E6", "--q-order", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1 - 24 q - 196632 q^2"));
    let out = run(&["expand", "delta1", "--q-order", "2"]);
    assert!(stdout(&out).contains("1/4 + 6 q + 6 q^2"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "C2.4"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "T3.3", "--set", "T3.3:1=2241"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "T9.9"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "E4", "--q-order", "1/5"]).status.code(), Some(2));
    assert_eq!(run(&["fit", "E6", "SL2Z", "14"]).status.code(), Some(1));
    assert_eq!(run(&["check-transforms", "--tau", "0.1i"]).status.code(), Some(2));
}

#[test]
fn verify_json_round_trips_and_is_deterministic() {
    let args = ["verify", "3.*", "--format", "json"];
    let first = stdout(&run(&args));
    let second = stdout(&run(&args));
    assert_eq!(first, second);
    let reports: Vec<JsonReport> = serde_json::from_str(&first).unwrap();
    assert_eq!(reports.len(), 6);
    assert!(reports.iter().all(|r| r.status == Status::Pass));
    assert_eq!(serde_json::to_string_pretty(&reports).unwrap(), first.trim_end());
}

#[test]
fn out_flag_writes_file() {
    let path: PathBuf = std::env::temp_dir().join(format!("anomaly-forms-cli-{}.txt", std::process::id()));
    let out = run(&["verify", "T2.3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with("T2.3   PASS [REAL2+sinh]"), "{written}");
}

#[test]
fn check_transforms_defaults_pass() {
    let out = run(&["check-transforms"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}
