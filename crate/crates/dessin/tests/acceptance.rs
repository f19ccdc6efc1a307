//! Acceptance gate: every published number and structural claim the toolkit
//! must reproduce, one test per criterion. Each prints its own pass/fail
//! line; `dessin verify-paper` runs the same table.

use dessin::verify::{run_criterion, CRITERION_COUNT};

fn check(id: usize) {
    let outcome = run_criterion(id);
    let status = if outcome.pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {:>2} [{}] {}: {}",
        outcome.id, status, outcome.label, outcome.detail
    );
    assert!(
        outcome.pass,
        "criterion {} failed: {}",
        outcome.id, outcome.detail
    );
}

#[test]
fn criterion_01_subset_sums_exhaustive() {
    check(1);
}

#[test]
fn criterion_02_decomposability_dichotomy_fuzz() {
    check(2);
}

#[test]
fn criterion_03_tree_counts() {
    check(3);
}

#[test]
fn criterion_04_exact_models() {
    check(4);
}

#[test]
fn criterion_05_square_edge_count_valuation() {
    check(5);
}

#[test]
fn criterion_06_one_orbit_of_six() {
    check(6);
}

#[test]
fn criterion_07_decomposable_contrast() {
    check(7);
}

#[test]
fn criterion_08_one_orbit_of_three() {
    check(8);
}

#[test]
fn criterion_09_difference_valuations() {
    check(9);
}

#[test]
fn criterion_10_property_suites() {
    check(10);
}

#[test]
fn criterion_count_is_stable() {
    assert_eq!(CRITERION_COUNT, 10);
}
