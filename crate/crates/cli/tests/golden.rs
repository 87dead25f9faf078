//! Byte-exact pins of the CLI's report output.
//!
//! Every report format is versioned (`trinogen.verdict/1` and friends), so
//! any change to the renderers must show up here as a deliberate golden-file
//! update, not an accidental drift.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trinogen"))
        .args(args)
        .env_remove("TRINOGEN_WORKERS")
        .output()
        .expect("failed to launch trinogen")
}

fn check(args: &[&str], golden: &str, expected_exit: i32, expected_stdout: &str) {
    let out = run(args);
    let stdout = String::from_utf8(out.stdout).expect("stdout is not utf-8");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(
        out.status.code(),
        Some(expected_exit),
        "exit code mismatch for {args:?} (stderr: {stderr})"
    );
    assert!(stderr.is_empty(), "unexpected stderr for {args:?}: {stderr}");
    assert_eq!(stdout, expected_stdout, "stdout drifted from {golden} for {args:?}");
}

#[test]
fn analyze_monogenic_with_generator() {
    check(
        &["analyze", "4", "8", "8"],
        "analyze_4_8_8.txt",
        0,
        include_str!("golden/analyze_4_8_8.txt"),
    );
}

#[test]
fn analyze_not_monogenic_text() {
    check(
        &["analyze", "5", "5", "2"],
        "analyze_5_5_2.txt",
        0,
        include_str!("golden/analyze_5_5_2.txt"),
    );
}

#[test]
fn analyze_not_monogenic_json() {
    check(
        &["analyze", "5", "5", "2", "--json"],
        "analyze_5_5_2.json",
        0,
        include_str!("golden/analyze_5_5_2.json"),
    );
}

#[test]
fn analyze_inconclusive_prime_power_degree() {
    check(
        &["analyze", "27", "810", "2", "--verbose"],
        "analyze_27_810_2.txt",
        2,
        include_str!("golden/analyze_27_810_2.txt"),
    );
}

#[test]
fn analyze_inconclusive_no_witness() {
    check(
        &["analyze", "10", "161", "576", "--verbose"],
        "analyze_10_161_576.txt",
        2,
        include_str!("golden/analyze_10_161_576.txt"),
    );
}

#[test]
fn certify_quintic_clause_confirmed() {
    check(
        &["certify", "d51", "5", "5", "2"],
        "certify_d51_5_5_2.txt",
        0,
        include_str!("golden/certify_d51_5_5_2.txt"),
    );
}

#[test]
fn certify_no_clause_fired() {
    check(
        &["certify", "3^r", "27", "810", "2"],
        "certify_3r_27_810_2.txt",
        2,
        include_str!("golden/certify_3r_27_810_2.txt"),
    );
}

#[test]
fn polygon_all_local_factors() {
    check(
        &["polygon", "5", "5", "2", "--prime", "2"],
        "polygon_5_5_2.txt",
        0,
        include_str!("golden/polygon_5_5_2.txt"),
    );
}

#[test]
fn scan_residue_class_box() {
    let spec = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/scan_spec.txt");
    check(
        &["scan", "--spec", spec.to_str().unwrap()],
        "scan_d61.txt",
        0,
        include_str!("golden/scan_d61.txt"),
    );
}

#[test]
fn scan_is_deterministic_across_worker_counts() {
    let spec = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/scan_spec.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_trinogen"))
        .args(["scan", "--spec", spec.to_str().unwrap()])
        .env("TRINOGEN_WORKERS", "4")
        .output()
        .expect("failed to launch trinogen");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        include_str!("golden/scan_d61.txt"),
        "scan output must not depend on the worker count"
    );
}

#[test]
fn input_errors_exit_three() {
    // Degree too small.
    let out = run(&["analyze", "1", "3", "5"]);
    assert_eq!(out.status.code(), Some(3));
    // b = 0 is degenerate (x divides the trinomial).
    let out = run(&["analyze", "5", "5", "0"]);
    assert_eq!(out.status.code(), Some(3));
    // Unknown theorem table.
    let out = run(&["certify", "nope", "5", "5", "2"]);
    assert_eq!(out.status.code(), Some(3));
    // Unparsable integer.
    let out = run(&["analyze", "5", "x", "2"]);
    assert_eq!(out.status.code(), Some(3));
    // Missing subcommand arguments.
    let out = run(&["polygon", "5", "5", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn non_dividing_phi_exits_two() {
    let out = run(&["polygon", "5", "5", "2", "--prime", "2", "--phi", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("does not divide"),
        "expected a non-divisor explanation, got: {stdout}"
    );
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["analyze", "--help"]).status.code(), Some(0));
}
