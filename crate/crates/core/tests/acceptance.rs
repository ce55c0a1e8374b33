//! Acceptance suite: one test per criterion, running the same checks as
//! `emzv verify-all`. Each test prints its own `criterion N [PASS|FAIL]`
//! line (visible with `--nocapture`; the per-test ok/FAILED line of the
//! harness carries the same information either way).
//!
//! Every tolerance and threshold is pinned inside `emzv::verify`.

use emzv::verify::run_criterion;

fn check(id: u8) {
    let outcome = run_criterion(id);
    println!(
        "criterion {:>2} [{}] {}: {}",
        outcome.id,
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.name,
        outcome.detail
    );
    assert!(
        outcome.passed,
        "criterion {} failed: {}",
        outcome.id, outcome.detail
    );
}

#[test]
fn criterion_01_fay_shuffle_dimensions_to_weight_101() {
    check(1);
}

#[test]
fn criterion_02_w_dimensions_hilbert_series_polynomial_part() {
    check(2);
}

#[test]
fn criterion_03_binomial_determinant_lu_and_identity() {
    check(3);
}

#[test]
fn criterion_04_rank_of_c_matrices_and_closed_formulas() {
    check(4);
}

#[test]
fn criterion_05_length_two_ranks_and_even_weight_constants() {
    check(5);
}

#[test]
fn criterion_06_purity_of_length_two_derivatives() {
    check(6);
}

#[test]
fn criterion_07_relation_suite_to_weight_30() {
    check(7);
}

#[test]
fn criterion_08_numeric_cross_validation() {
    check(8);
}

#[test]
fn criterion_09_pointwise_properties_and_path_identities() {
    check(9);
}

#[test]
fn criterion_10_length_three_rank_report() {
    check(10);
}
