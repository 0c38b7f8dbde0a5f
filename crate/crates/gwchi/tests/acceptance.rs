//! End-to-end verification: one test per numbered check of the built-in
//! suite, each printing its one-line verdict. Run with `--nocapture` to see
//! the lines for passing checks too; on failure the details are part of the
//! panic message.

use gwchi::selftest::{run_criterion, CriterionOutcome};

fn verify(id: u8) -> CriterionOutcome {
    let outcome = run_criterion(id).expect("check id is in range");
    println!("{}", outcome.summary_line());
    assert!(
        outcome.passed,
        "{}\n{}",
        outcome.summary_line(),
        outcome.details.join("\n")
    );
    outcome
}

#[test]
fn check_1_ring_relations_and_hilbert_symbol_match_solvability_search() {
    verify(1);
}

#[test]
fn check_2_power_structure_axioms_and_additivity_convolution() {
    verify(2);
}

#[test]
fn check_3_sign_twist_commutes_with_symmetric_powers() {
    verify(3);
}

#[test]
fn check_4_closed_forms_match_series_inversion() {
    verify(4);
}

#[test]
fn check_5_orbit_enumeration_matches_power_structure() {
    verify(5);
}

#[test]
fn check_6_grassmannian_triangle_chi_and_zeta() {
    verify(6);
}

#[test]
fn check_7_cubic_surface_golden_chain() {
    verify(7);
}

#[test]
fn check_8_torsion_identities() {
    verify(8);
}

#[test]
fn check_9_diagnostic_report_emits_per_instance_verdicts() {
    let outcome = verify(9);
    let text = outcome.details.join("\n");
    assert!(text.contains("(3,5,7)"), "report must cover each class triple");
    assert!(text.contains("(5,13,17)"));
    assert!(
        text.contains("equals") && text.contains("DIFFERS"),
        "verdicts must vary by instance"
    );
    assert!(text.contains("signature"), "factor-sign line must be present");
    assert!(
        text.contains("pairwise-tail") || text.contains("pairwise-subscript"),
        "tail-variant line must be present"
    );
}
