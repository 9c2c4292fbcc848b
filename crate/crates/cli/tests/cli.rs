//! The `diamond` binary end to end: exit codes, output, determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use diamond_cli::SystemDocument;

const BIN: &str = env!("CARGO_BIN_EXE_diamond");
const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn data(name: &str) -> String {
    format!("{DATA}/{name}")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn xyz_check_and_nf() {
    let o = run(&["check", &data("xyz.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ambiguities: 0"));
    assert!(stdout(&o).contains("verdict: Convergent"));
    let o = run(&["nf", &data("xyz.json"), "--expr", "x*y*z"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("x^3 + y^3 + z^3"));
    let o = run(&["certify", &data("xyz.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cube_triangle_fails_at_x4() {
    let o = run(&["--json", "check", "--mode", "triangle", &data("cube.json")]);
    assert_eq!(o.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ambs = v["ambiguities"].as_array().unwrap();
    assert_eq!(ambs.len(), 1);
    assert_eq!(ambs[0]["grade"], "x^4");
    assert_ne!(ambs[0]["residue"], "0");
    for key in ["grade", "kind", "minimal", "obstruction", "residue", "trace_length"] {
        assert!(ambs[0].get(key).is_some(), "{key}");
    }
    assert_eq!(v["mode"], "triangle");
    assert!(v["certificate"]["deglex"].is_object());
}

#[test]
fn reads_stdin() {
    let text = std::fs::read_to_string(data("cube.json")).unwrap();
    let o = run_stdin(&["check"], &text);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("ambiguities: 2"));
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        vec!["--json", "check"],
        vec!["--json", "obstructions"],
        vec!["--json", "chains", "--max-degree", "3", "--max-length", "8"],
        vec!["--json", "homology", "--max-length", "5", "--full"],
        vec!["--json", "complete", "--max-rounds", "3"],
    ] {
        for f in ["xyz.json", "cube.json"] {
            if args[1] == "complete" && f == "xyz.json" {
                continue;
            }
            let mut a = args.clone();
            let path = data(f);
            a.push(&path);
            let (x, y) = (run(&a), run(&a));
            assert_eq!(x.stdout, y.stdout, "{a:?}");
            assert!(!x.stdout.is_empty(), "{a:?}");
        }
    }
}

#[test]
fn completed_document_round_trips() {
    let o = run(&["--json", "complete", "--max-rounds", "3", &data("cube.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["verdict"], "Convergent");
    let doc = SystemDocument::from_json(&v["document"].to_string()).unwrap();
    assert_eq!(doc.rules.len(), 3);
    let o = run_stdin(&["check"], &doc.to_json());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    let o = run(&["check", &data("missing.json")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_stdin(&["check"], "{not json");
    assert_eq!(o.status.code(), Some(2));
    let bad = std::fs::read_to_string(data("xyz.json")).unwrap().replace("x^3", "x^3 + w");
    let o = run_stdin(&["check"], &bad);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rules[0].rhs"));
    let o = run(&["nf", &data("xyz.json"), "--expr", "x*"]);
    assert_eq!(o.status.code(), Some(2));
    // completion orients by deglex only
    let o = run(&["complete", &data("xyz.json")]);
    assert_eq!(o.status.code(), Some(2));
    // triangle needs a minimal system
    let doc = r#"{"field": "Q", "generators": ["x"], "rules": [{"lhs": "x^2", "rhs": "0"},
        {"lhs": "x^3", "rhs": "0"}], "certificate": {"deglex": {}}}"#;
    let o = run_stdin(&["check", "--mode", "triangle"], doc);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_certificate_exits_3() {
    let doc = r#"{"field": "Q", "generators": ["x", "y"], "rules": [{"lhs": "x", "rhs": "y"}],
        "certificate": {"deglex": {"order": ["x", "y"]}}}"#;
    let o = run_stdin(&["certify"], doc);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("Failed"));
    let o = run_stdin(&["check"], doc);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn fuse_exits_5() {
    let o = run(&["--fuse", "1", "nf", &data("cube.json"), "--expr", "x^9"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn oracle_finds_the_cube_failure() {
    let o = run(&["oracle", &data("cube.json"), "--max-length", "6"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).starts_with("x^4 has two normal forms"));
    let o = run(&["oracle", &data("xyz.json"), "--max-length", "6"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn homology_modes() {
    let o = run(&["--json", "homology", &data("cube.json"), "--max-length", "6", "--monomial"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let h1: Vec<&str> = v["nonzero"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["degree"] == 1)
        .map(|r| r["grade"].as_str().unwrap())
        .collect();
    assert!(h1.contains(&"x^4"), "{h1:?}");
    let o = run(&["--json", "homology", &data("xyz.json"), "--max-length", "6", "--full"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["nonzero"].as_array().unwrap().iter().all(|r| r["degree"] == 0));
}
