//! End-to-end checks of the command-line contract: exit codes, report
//! shape, DOT output, document round-trips, and determinism.

use std::process::{Command, Output};

fn envlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_envlat")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("envlat-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(envlat(&["--help"]).status.code(), Some(0));
    assert_eq!(envlat(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(envlat(&[]).status.code(), Some(2));
}

#[test]
fn validate_reports_pass_as_json() {
    let out = envlat(&["validate", "corpus:m3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["command"], "validate");
    assert_eq!(report["outcome"], "pass");
    assert_eq!(report["digest"].as_str().unwrap().len(), 64);
    assert!(report["witnesses"].as_array().unwrap().len() >= 2);
    assert!(report["timing"].is_null());
    // Stable field order in the serialized form.
    let text = stdout(&out);
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap_or(usize::MAX);
    assert!(pos("command") < pos("digest"));
    assert!(pos("digest") < pos("outcome"));
    assert!(pos("outcome") < pos("witnesses"));
    assert!(pos("witnesses") < pos("timing"));
}

#[test]
fn admissibility_failure_exits_one_with_witness() {
    let out = envlat(&["admissible", "corpus:m3", "--set", "a,b"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("outcome: fail"));
    assert!(text.contains("{a,b} is not join-admissible"));
    assert!(text.contains("fails at c"), "{text}");

    let ok = envlat(&["admissible", "corpus:n5", "--set", "a,c"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
}

#[test]
fn unknown_element_is_a_usage_error() {
    let out = envlat(&["admissible", "corpus:m3", "--set", "a,zz"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("outcome: error"));
}

#[test]
fn cap_violations_exit_three() {
    let out = envlat(&["envelope", "corpus:m3", "--cap", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("outcome: error"));
}

#[test]
fn dot_output_for_diagram_commands_only() {
    let out = envlat(&["show", "corpus:n5", "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("label=").count(), 5);

    let pol = envlat(&["polarity", "corpus:m3", "--dot"]);
    assert!(stdout(&pol).contains("cluster_x"));

    let no = envlat(&["aideal", "corpus:m3", "--set", "a", "--dot"]);
    assert_eq!(no.status.code(), Some(2));
}

#[test]
fn lattice_documents_round_trip_through_files() {
    let doc = r#"{
        "name": "pentagon",
        "elements": ["0", "a", "b", "c", "1"],
        "covers": [["0","a"], ["0","b"], ["b","c"], ["a","1"], ["c","1"]]
    }"#;
    let path = temp_file("n5.json", doc);
    let out = envlat(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("pentagon: 5 elements"));

    let irr = envlat(&["irreducibles", path.to_str().unwrap()]);
    assert!(stdout(&irr).contains("J = {a,b,c}"));
    std::fs::remove_file(path).ok();
}

#[test]
fn malformed_documents_exit_two() {
    let path = temp_file("broken.json", "{ not json");
    assert_eq!(envlat(&["validate", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_file(path).ok();

    let unbounded = temp_file(
        "unbounded.json",
        r#"{"name": "two points", "elements": ["x", "y"], "covers": []}"#,
    );
    let out = envlat(&["validate", unbounded.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "no bounds is a mathematical failure");
    std::fs::remove_file(unbounded).ok();
}

#[test]
fn raw_pervin_spaces_are_accepted() {
    let path = temp_file("space.json", r#"{"points": 3, "family": [[0,1],[1,2]]}"#);
    let out = envlat(&["pervin-blocks", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("5 of them"));

    let bic = envlat(&["bicompletion", path.to_str().unwrap()]);
    assert_eq!(bic.status.code(), Some(0));
    assert!(stdout(&bic).contains("symmetrization classes"));
    std::fs::remove_file(path).ok();
}

#[test]
fn side_selector_switches_irreducibles() {
    let j = envlat(&["pervin-blocks", "corpus:n5", "--side", "j"]);
    let m = envlat(&["pervin-blocks", "corpus:n5", "--side", "m"]);
    assert_eq!(j.status.code(), Some(0));
    assert_eq!(m.status.code(), Some(0));
    assert_ne!(stdout(&j), stdout(&m));
}

#[test]
fn tight_check_distinguishes_the_pair_kinds() {
    let galois = envlat(&["tight-check", "corpus:square"]);
    assert_eq!(galois.status.code(), Some(0));
    assert!(stdout(&galois).contains("tight = true"));

    let free = envlat(&["tight-check", "corpus:square", "--kind", "free"]);
    assert_eq!(free.status.code(), Some(1));
    assert!(stdout(&free).contains("tight = false"));
    assert!(stdout(&free).contains("R-regular but not R-closed"));
}

#[test]
fn free_pair_requires_a_distributive_lattice() {
    let out = envlat(&["dadl", "corpus:m3", "--kind", "free"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not distributive"));
}

#[test]
fn classify_rejects_bad_tables() {
    let short = envlat(&["classify", "corpus:square", "corpus:antichain3", "--table", "0,a"]);
    assert_eq!(short.status.code(), Some(2));

    let full = envlat(&["classify", "corpus:square", "corpus:antichain3", "--table", "0,a,b,1"]);
    assert_eq!(full.status.code(), Some(0));
    assert!(stdout(&full).contains("sends_join_admissible_to_join_admissible: false"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["galois", "corpus:n5", "--json"],
        vec!["classical", "corpus:m3"],
        vec!["tscp-check", "corpus:kite", "--json"],
    ] {
        let first = envlat(&args);
        let second = envlat(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), Some(0));
    }
}

#[test]
fn corpus_listing_matches_the_library() {
    let out = envlat(&["corpus", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["chain2", "square", "m3", "n5", "kite", "cube", "pendant22"] {
        assert!(text.contains(name), "missing {name}");
    }
    assert!(text.contains("lattices of size 5: 5"));
}
