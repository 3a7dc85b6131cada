//! One test and one printed PASS/FAIL line per acceptance criterion
//! (`cargo test --test acceptance -- --nocapture --test-threads 1`).

use weberbox::acceptance::{self, AcceptanceOptions, CriterionOutcome};

fn report(o: CriterionOutcome) {
    println!("{}", o.line());
    assert!(o.passed, "criterion {} failed: {}", o.id, o.detail);
}

const FULL: AcceptanceOptions = AcceptanceOptions { quick: false };

#[test]
fn criterion_01_harmonic_limit() {
    report(acceptance::harmonic_limit());
}

#[test]
fn criterion_02_critical_length() {
    report(acceptance::critical_length());
}

#[test]
fn criterion_03_spectrum_shape() {
    report(acceptance::spectrum_shape(FULL));
}

#[test]
fn criterion_04_box_limit() {
    report(acceptance::box_limit());
}

#[test]
fn criterion_05_oracle_equivalence() {
    report(acceptance::oracle_equivalence(FULL));
}

#[test]
fn criterion_06_asymptotic_law() {
    report(acceptance::asymptotic_law());
}

#[test]
fn criterion_07_sandwich() {
    report(acceptance::sandwich());
}

#[test]
fn criterion_08_gaussian_identity() {
    report(acceptance::gaussian_identity());
}

#[test]
fn criterion_09_ode_residual() {
    report(acceptance::ode_residual());
}

#[test]
fn criterion_10_hydrogen() {
    report(acceptance::hydrogen());
}

#[test]
fn criterion_11_piecewise_coulomb() {
    report(acceptance::piecewise_coulomb(FULL));
}
