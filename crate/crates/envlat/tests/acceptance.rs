//! The acceptance gate: every suite criterion at its stated size, with its
//! runtime bound. Each test is one criterion, so the harness output shows
//! one pass/fail line per criterion; the detail line is printed for
//! `--show-output` and failures.

use envlat::selftest::run_criterion;
use std::time::{Duration, Instant};

fn gate(id: usize, limit: Duration) {
    let start = Instant::now();
    let result = run_criterion(id, 42, None);
    let elapsed = start.elapsed();
    println!("{} [{elapsed:.2?}]", result.line());
    assert!(result.passed, "{}", result.line());
    assert!(
        elapsed < limit,
        "criterion {id} took {elapsed:.2?}, over its {limit:.2?} budget"
    );
}

#[test]
fn criterion_01_meet_envelope_of_m3_is_the_cube() {
    gate(1, Duration::from_secs(1));
}

#[test]
fn criterion_02_counterexample_maps_reproduce() {
    gate(2, Duration::from_secs(1));
}

#[test]
fn criterion_03_admissibility_definitions_agree_to_seven() {
    gate(3, Duration::from_secs(300));
}

#[test]
fn criterion_04_ideal_generation_and_intersection_to_five() {
    gate(4, Duration::from_secs(300));
}

#[test]
fn criterion_05_envelope_universal_property_to_five() {
    gate(5, Duration::from_secs(600));
}

#[test]
fn criterion_06_galois_reconstruction_to_six() {
    gate(6, Duration::from_secs(300));
}

#[test]
fn criterion_07_surjections_transport_admissibility() {
    gate(7, Duration::from_secs(300));
}

#[test]
fn criterion_08_duality_suite_to_six() {
    gate(8, Duration::from_secs(600));
}

#[test]
fn criterion_09_free_pair_fails_tightness() {
    gate(9, Duration::from_secs(1));
}

#[test]
fn criterion_10_pervin_suite() {
    gate(10, Duration::from_secs(600));
}

#[test]
fn criterion_11_selftest_reports_are_byte_identical() {
    let run = || {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_envlat"))
            .args(["selftest", "--seed", "42"])
            .output()
            .expect("selftest runs");
        assert!(
            out.status.success(),
            "selftest exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let first = run();
    let second = run();
    let text = String::from_utf8(first.clone()).expect("report is UTF-8");
    let pass_lines = text.lines().filter(|l| l.contains("): pass — ")).count();
    println!("criterion 11 (deterministic reports): two runs, {} criterion lines each", pass_lines);
    assert_eq!(pass_lines, 11, "selftest must report all criteria as passing:\n{text}");
    assert_eq!(first, second, "two selftest runs must be byte-identical");
}
