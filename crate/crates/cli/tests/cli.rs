//! End-to-end checks of the binary surface: flag parsing, JSON shape,
//! exit codes, and byte determinism across runs.

use std::process::{Command, Output};

fn irrpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irrpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_case_ii_anchor() {
    let out = irrpoly(&["count", "--p", "2", "--r", "1", "--m", "5", "--case", "ii", "--c", "0"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["count"], "2");
    assert_eq!(doc["G"], "10");
    assert_eq!(doc["case"], "ii");
}

#[test]
fn count_final_remark_row() {
    // G = 8^10 - 64 at q = 8, m = 12, case (i), c != 0
    let out = irrpoly(&[
        "count", "--p", "2", "--r", "3", "--m", "12", "--case", "i", "--c", "1",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["G"], "1073741760");
    assert_eq!(doc["count"], "89478480");
}

#[test]
fn scope_errors_exit_3() {
    let out = irrpoly(&["count", "--p", "3", "--r", "1", "--m", "3", "--case", "i", "--c", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("characteristic 2"), "stderr: {err}");
}

#[test]
fn budget_errors_exit_4() {
    let out = irrpoly(&[
        "brute", "--p", "2", "--r", "1", "--m", "40", "--case", "ii", "--c", "0",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn brute_agrees_with_pipeline() {
    for case in ["i", "ii", "ii-variant"] {
        let a = irrpoly(&["count", "--p", "2", "--r", "2", "--m", "4", "--case", case, "--c", "0,1"]);
        let b = irrpoly(&["brute", "--p", "2", "--r", "2", "--m", "4", "--case", case, "--c", "0,1"]);
        assert!(a.status.success() && b.status.success());
        let da: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
        let db: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
        assert_eq!(da["count"], db["count"], "case {case}");
    }
}

#[test]
fn places_auto_crosschecks() {
    let out = irrpoly(&["places", "--p", "2", "--r", "3", "--m", "1", "--d", "3", "--beta", "1"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // tr(1) = m * 1 = 1 != 0 at m = 1, so the transfer route applies: N = 1
    assert_eq!(doc["value"], "1");
    assert!(doc["method"].as_str().unwrap().contains("nperm-transfer"));
}

#[test]
fn expsum_json_and_distribution() {
    let out = irrpoly(&["expsum", "--p", "2", "--r", "1", "--m", "3", "--d", "-1", "--u", "1", "--v", "1"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["value"], "-5");

    let out = irrpoly(&["expsum", "--p", "2", "--r", "3", "--d", "3", "--distribution"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("value,count"));
    assert!(text.contains("8,1"));
}

#[test]
fn table_regenerates_reference_rows() {
    let out = irrpoly(&["table", "g-0m1", "--p", "3", "--r", "1", "--m", "1..10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // q = 3, m = 5 row: G = 20, count = 4
    assert!(text.contains("5,c=0,20,4"), "output: {text}");
    // empty range: header only
    let out = irrpoly(&["table", "g-0m1", "--p", "3", "--r", "1", "--m", "7..6"]);
    assert_eq!(stdout(&out).trim(), "m,class,G,count");
}

#[test]
fn verify_suite_exit_codes() {
    let out = irrpoly(&["verify", "tau"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("19/19"));
    // the fixture suite carries the documented misprint and exits 2
    let out = irrpoly(&["verify", "fixtures-dm1"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown suite is a usage error
    let out = irrpoly(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["count", "--p", "2", "--r", "2", "--m", "6", "--case", "i", "--c", "0,1"];
    let a = irrpoly(&args);
    let b = irrpoly(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["table", "g-c3", "--p", "2", "--r", "2", "--m", "1..30"];
    let a = irrpoly(&args);
    let b = irrpoly(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn modulus_file_override() {
    let dir = std::env::temp_dir().join("irrpoly-test-moduli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mods.txt");
    // x^2 + x + 1 written explicitly; same field, so same counts
    std::fs::write(&path, "1,1,1\n").unwrap();
    let out = irrpoly(&[
        "field-inspect", "--p", "2", "--r", "2", "--modulus", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["modulus"], "1,1,1");
    // a reducible override is rejected
    std::fs::write(&path, "1,0,1\n").unwrap();
    let out = irrpoly(&[
        "field-inspect", "--p", "2", "--r", "2", "--modulus", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
