//! End-to-end tests of the binary: output shapes, exit codes,
//! determinism, and corpus regeneration.

use std::path::Path;
use std::process::{Command, Output};

fn cqs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqs"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = cqs(args);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn hj_commands() {
    assert_eq!(stdout_of(&["hj", "expand", "25", "9"]).trim(), "[3,5,2]");
    assert_eq!(stdout_of(&["hj", "dual", "19", "7"]).trim(), "[2,3,2,3]");
    assert_eq!(stdout_of(&["hj", "eval", "2,1,2"]).trim(), "p=0 q=1");
    // validation failures exit with 1
    let out = cqs(&["hj", "expand", "4", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn pres_render_lines() {
    let text = stdout_of(&["pres", "all", "19", "7", "--render"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2], "[(2,1)]-(1)-[(3,1)]");
    // --limit caps output without changing the prefix
    let limited = stdout_of(&["--limit", "2", "pres", "all", "19", "7", "--render"]);
    assert_eq!(limited.lines().count(), 2);
    assert!(text.starts_with(&limited));
}

#[test]
fn pres_verify_failure_exits_2() {
    // a zero chain outside the K-set is a validation error
    let out = cqs(&["pres", "verify", "19", "7", "--zcf", "3,1,2,2"]);
    assert_eq!(out.status.code(), Some(1));
    // a valid one passes
    let out = cqs(&["pres", "verify", "19", "7", "--zcf", "2,2,1,3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn horikawa_counts() {
    let text = stdout_of(&["--json", "small", "horikawa", "--pg", "4"]);
    assert_eq!(text.lines().count(), 10);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["label"], "p_g=4 (i)");
}

#[test]
fn quotient_cases() {
    let text = stdout_of(&["quot", "cases", "9", "2"]);
    assert!(text.contains("1/18(1,11)"));
    assert!(text.contains("T(2,3,2)"));
    let out = cqs(&["quot", "scan-wahl", "15"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_output_is_deterministic_and_round_trips() {
    let a = stdout_of(&["--json", "pres", "all", "25", "9"]);
    let b = stdout_of(&["--json", "pres", "all", "25", "9"]);
    assert_eq!(a, b);
    for line in a.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), line);
    }
}

#[test]
fn selftest_passes() {
    let out = cqs(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn corpus_round_trip() {
    let dir = std::env::temp_dir().join(format!("cqs-corpus-{}", std::process::id()));
    let dir_s = dir.to_str().unwrap();
    let out = cqs(&["corpus", "regen", "--dir", dir_s]);
    assert_eq!(out.status.code(), Some(0));
    // regeneration is byte-identical
    let before = std::fs::read(dir.join("typeII.jsonl")).unwrap();
    let out = cqs(&["corpus", "regen", "--dir", dir_s]);
    assert_eq!(out.status.code(), Some(0));
    let after = std::fs::read(dir.join("typeII.jsonl")).unwrap();
    assert_eq!(before, after);
    // a pristine corpus checks clean
    let out = cqs(&["corpus", "check", "--dir", dir_s]);
    assert_eq!(out.status.code(), Some(0));
    // one edited notation string is a one-entry diff with exit 2
    let path = dir.join("typeII.jsonl");
    let body = std::fs::read_to_string(&path).unwrap();
    let tampered = body.replacen("[2(2,1)]-(2)", "[2(2,1)]-(3)", 1);
    assert_ne!(body, tampered);
    std::fs::write(&path, tampered).unwrap();
    let out = cqs(&["corpus", "check", "--dir", dir_s]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("diff")).count(), 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn committed_corpus_is_current() {
    // the files under data/corpus at the workspace root stay in sync
    let root = Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cqs"))
        .args(["corpus", "check", "--dir"])
        .arg(root.join("data/corpus"))
        .output()
        .expect("binary runs");
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}
