//! End-to-end CLI behavior: outputs, determinism, and the exit-code
//! contract.

use assert_cmd::Command;
use predicates::prelude::*;
use std::path::PathBuf;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn cmd() -> Command {
    let mut c = Command::cargo_bin("stringy").unwrap();
    c.env("STRINGY_FIXTURE_DIR", fixtures_dir());
    c
}

#[test]
fn compute_quintic_table_output() {
    cmd()
        .args(["compute", "--fixture", "quintic_node.ranks.json", "--mode", "ranks"])
        .assert()
        .success()
        .stdout(predicate::str::contains("204"))
        .stdout(predicate::str::contains("K0 = 1, C0 = 1"))
        .stdout(predicate::str::contains("poincare(S0): PASS"))
        .stdout(predicate::str::contains("poincare(Q): FAIL"));
}

#[test]
fn compute_pinched_torus_simplicial() {
    cmd()
        .args(["compute", "--fixture", "pinched_torus.simp.json", "--mode", "simplicial"])
        .assert()
        .success()
        .stdout(predicate::str::contains("K0 = 1, C0 = 1"))
        .stdout(predicate::str::contains("poincare(S0): PASS"));
}

#[test]
fn compute_via_input_path() {
    cmd()
        .args(["compute", "--mode", "simplicial", "--input"])
        .arg(fixtures_dir().join("sphere_smoothpoint.simp.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("poincare(S0): PASS"));
}

#[test]
fn compute_is_byte_identical_across_runs() {
    let run = || {
        cmd()
            .args(["compute", "--fixture", "quintic_node.ranks.json", "--mode", "ranks", "--out", "json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn compute_json_round_trips() {
    let out = cmd()
        .args(["compute", "--fixture", "pinched_torus.simp.json", "--mode", "simplicial", "--out", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["table_s0"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["n"], serde_json::json!(1));
}

#[test]
fn zigzag_quintic_finds_witness() {
    cmd()
        .args(["zigzag", "--fixture", "quintic_node.ranks.json", "--mode", "ranks"])
        .assert()
        .success()
        .stdout(predicate::str::contains("witness: found"))
        .stdout(predicate::str::contains("exact: PASS"));
}

#[test]
fn zigzag_asymmetric_reports_mismatch() {
    cmd()
        .args(["zigzag", "--fixture", "asymmetric_link.ranks.json", "--mode", "ranks"])
        .assert()
        .success()
        .stdout(predicate::str::contains("dims mismatch"));
}

#[test]
fn verify_quintic_passes() {
    cmd()
        .args(["verify", "--fixture", "quintic_node.ranks.json", "--mode", "ranks"])
        .assert()
        .success()
        .stdout(predicate::str::contains("ses_a: PASS"))
        .stdout(predicate::str::contains("poincare(Q): FAIL (informational)"));
}

#[test]
fn verify_twonode_runs_obstruction_checks() {
    cmd()
        .args(["verify", "--fixture", "twonode.ranks.json", "--mode", "ranks"])
        .assert()
        .success()
        .stdout(predicate::str::contains("multinode_c_injective: PASS"))
        .stdout(predicate::str::contains("multinode_d_surjective: PASS"));
}

#[test]
fn malformed_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    cmd()
        .args(["compute", "--mode", "ranks", "--input"])
        .arg(&path)
        .assert()
        .code(2)
        .stderr(predicate::str::contains("error:"));
}

#[test]
fn missing_file_exits_2() {
    cmd()
        .args(["compute", "--mode", "ranks", "--input", "/nonexistent/nope.json"])
        .assert()
        .code(2);
}

#[test]
fn tampered_ranks_exit_2_naming_the_joint() {
    let text = std::fs::read_to_string(fixtures_dir().join("quintic_node.ranks.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    // Break exactness at degree 6 by dropping the final connecting rank.
    doc["maps"]["ranks"][6] = serde_json::json!([0, 0, 0]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tampered.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    cmd()
        .args(["zigzag", "--mode", "ranks", "--input"])
        .arg(&path)
        .assert()
        .code(2)
        .stderr(predicate::str::contains("not exact"));
}

#[test]
fn wrong_mode_for_document_exits_2() {
    cmd()
        .args(["compute", "--fixture", "quintic_node.ranks.json", "--mode", "simplicial"])
        .assert()
        .code(2);
}

#[test]
fn missing_input_and_fixture_is_an_error() {
    cmd().args(["compute", "--mode", "ranks"]).assert().code(2);
}
