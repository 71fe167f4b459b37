//! Acceptance suite: one test per criterion from the README's acceptance
//! list, each printing its per-check report (visible with --nocapture) and
//! failing if any check inside it fails.
//!
//! Criterion 7a is expected to stay red on exactly three checks: the printed
//! reference table for G_{0,-1} over 3^r has a misprinted m = 1 cell (it
//! prints 0; the pipeline, the brute element scan, and the matching 2^r cell
//! all give 1). The fixtures are encoded exactly as printed and the checker
//! reports the discrepancy instead of patching it; see the README.

use irrpoly_core::verify::{
    criterion10_final_remark, criterion1_distributions, criterion2_carlitz, criterion3_lifts,
    criterion4_places_cubic, criterion5_places_kloosterman, criterion6_tau,
    criterion7_fixtures_cubic, criterion7_fixtures_kloosterman, criterion8_oracle_equivalence,
    criterion9_properties, expected_fixture_failures, SuiteReport, VerifyConfig,
};

fn run(report: SuiteReport) {
    print!("{}", report.render_text());
    let failing: Vec<&str> = report
        .lines
        .iter()
        .filter(|l| !l.pass)
        .map(|l| l.id.as_str())
        .collect();
    assert!(
        report.passed(),
        "criterion {} failed on: {}",
        report.suite,
        failing.join(", ")
    );
}

#[test]
fn c01_value_distributions() {
    run(criterion1_distributions(&VerifyConfig::default()));
}

#[test]
fn c02_carlitz_classification() {
    run(criterion2_carlitz(&VerifyConfig::default()));
}

#[test]
fn c03_dickson_lifts() {
    run(criterion3_lifts(&VerifyConfig::default()));
}

#[test]
fn c04_place_counts_cubic() {
    run(criterion4_places_cubic(&VerifyConfig::default()));
}

#[test]
fn c05_place_counts_kloosterman() {
    run(criterion5_places_kloosterman(&VerifyConfig::default()));
}

#[test]
fn c06_tau_identity() {
    run(criterion6_tau(&VerifyConfig::default()));
}

#[test]
fn c07a_fixtures_kloosterman() {
    // Encoded exactly as printed; the known misprint keeps this criterion
    // honestly red on three checks. The assertion below still demands that
    // nothing BEYOND the documented cells fails, so regressions are caught.
    let report = criterion7_fixtures_kloosterman(&VerifyConfig::default());
    print!("{}", report.render_text());
    let failing: Vec<String> = report
        .lines
        .iter()
        .filter(|l| !l.pass)
        .map(|l| l.id.clone())
        .collect();
    let expected: Vec<String> = ["fixture-dm1-q3-c0-m1", "fixture-dm1-q9-c0-m1", "fixture-dm1-q27-c0-m1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(
        failing, expected,
        "unexpected fixture mismatches beyond the documented misprint \
         (expected exactly {:?})",
        expected_fixture_failures()
    );
    // The printed cells and the computed values cannot both be right; the
    // suite keeps reporting the three cells until the table is corrected.
    assert!(
        report.passed(),
        "criterion c07a failed on the documented misprinted cells: {} \
         (printed 0, every computed route gives 1; see README notes)",
        failing.join(", ")
    );
}

#[test]
fn c07b_fixtures_cubic() {
    run(criterion7_fixtures_cubic(&VerifyConfig::default()));
}

#[test]
fn c08_oracle_equivalence() {
    run(criterion8_oracle_equivalence(&VerifyConfig::default()));
}

#[test]
fn c09_structural_properties() {
    run(criterion9_properties(&VerifyConfig::default()));
}

#[test]
fn c10_final_remark_identity() {
    run(criterion10_final_remark(&VerifyConfig::default()));
}
