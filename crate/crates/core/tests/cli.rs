//! End-to-end checks of the command-line binary: exit codes, stream
//! separation, determinism of repeated invocations, and a few pinned
//! outputs.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prcldpc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn validate_gates_and_exit_codes() {
    let ok = run(&["validate", "--h", "0,2,21,29,60,72,75"]);
    assert!(ok.status.success());
    let text = stdout(&ok);
    assert!(text.contains("primitive=true"));
    assert!(text.contains("golomb=true"));
    assert!(text.contains("all_gates=true"));

    let bad = run(&["validate", "--h", "0,1,1"]);
    assert!(!bad.status.success());
    assert!(stdout(&bad).is_empty(), "data stream stays clean on errors");
    assert!(!bad.stderr.is_empty(), "diagnostics go to stderr");
}

#[test]
fn analyze_reports_reference_values() {
    let out = run(&["analyze", "--desc", "h=0,1,5,11,13 n=19"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("d=2 A(d)=3"), "stderr report: {err}");
    assert!(err.contains("Z0=8 Z1=2"));
    assert_eq!(stdout(&out), "n,d,A(d),method\n19,2,3,exact\n");

    let big = run(&["analyze", "--desc", "h=0,2,21,29,60,72,75 n=150"]);
    assert!(big.status.success());
    let err = String::from_utf8(big.stderr.clone()).unwrap();
    assert!(err.contains("d_est=11"), "estimate report: {err}");
}

#[test]
fn analyze_rejects_malformed_polynomials() {
    let out = run(&["analyze", "--desc", "h=0,1,1 n=19"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("error"), "diagnostic expected, got: {err}");
}

#[test]
fn profile_emits_reference_rows() {
    let out = run(&["profile", "--desc", "h=0,1,5,11,13 n=19", "--dmax", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("d,n,method\n"));
    assert!(text.contains("2,19,exact"));
    assert!(text.contains("3,21,exact"));
}

#[test]
fn encode_reference_word() {
    let out = run(&["encode", "--desc", "h=0,2,3 n=7", "--info", "111"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1110100\n");
}

#[test]
fn decode_roundtrip() {
    let out = run(&[
        "decode",
        "--desc",
        "h=0,2,3 n=7",
        "--llr",
        "-9,-8,-9,8,-9,9,8",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1110100\n");
}

#[test]
fn pn_dump_shows_the_landmark_neighborhood() {
    let out = run(&[
        "pn-dump",
        "--h",
        "0,1,5,11,13",
        "--landmark",
        "t2",
        "--back",
        "12",
        "--len",
        "40",
    ]);
    assert!(out.status.success());
    // left comb, eight-zero zone, the reversed polynomial, two-zero zone,
    // right comb
    assert_eq!(stdout(&out), "1111000000001010000010001100101010101010\n");
}

#[test]
fn simulate_is_byte_identical_across_invocations_and_workers() {
    let args_base = [
        "simulate",
        "--desc",
        "h=0,1,5,11,13 n=26",
        "--ebn0",
        "1,3",
        "--seed",
        "77",
        "--max-trials",
        "4096",
        "--min-errors",
        "1000000",
    ];
    let a = run(&args_base);
    assert!(a.status.success());
    let b = run(&args_base);
    let mut with_workers = args_base.to_vec();
    with_workers.extend_from_slice(&["--workers", "4"]);
    let c = run(&with_workers);
    assert_eq!(stdout(&a), stdout(&b), "repeat invocation differs");
    assert_eq!(stdout(&a), stdout(&c), "worker count changed the data");
    assert!(stdout(&a).starts_with("ebn0_db,trials,cw_errors"));
}

#[test]
fn design_finds_the_reference_polynomial() {
    let dir = std::env::temp_dir().join("prcldpc_cli_test_rulers.txt");
    std::fs::write(&dir, "0 1 5 11 13\n").unwrap();
    let out = run(&[
        "design",
        "--k",
        "13",
        "--wh",
        "5",
        "--wf",
        "2",
        "--rulers",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0,1,5,11,13"));
    let _ = std::fs::remove_file(dir);
}
