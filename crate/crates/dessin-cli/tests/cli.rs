//! End-to-end checks of the binary: exit codes, output formats, determinism.

use std::process::{Command, Output};

fn dessin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dessin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn passport_report() {
    let out = dessin(&["passport", "15,3,2,1/4,1^17", "--prime", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("white: indecomposable"));
    assert!(text.contains("d > p(r-1): true"));
}

#[test]
fn polygon_segments() {
    let out = dessin(&["polygon", "--poly", "6,-8,3", "--prime", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(1/2, x2)"));
}

#[test]
fn orbits_definitive_exit_zero() {
    let out = dessin(&["orbits", "6,2,1,1/4,1^6", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict       Definitive"));
    assert!(text.contains("orbit sizes   [3]"));
}

#[test]
fn orbits_json_round_trips() {
    let out = dessin(&["orbits", "6,2,1,1/4,1^6", "--prime", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("one document");
    assert_eq!(parsed["verdict"], "Definitive");
    assert_eq!(parsed["tree_count"], 3);
    // Identical invocations are byte-identical.
    let again = dessin(&["orbits", "6,2,1,1/4,1^6", "--prime", "5", "--format", "json"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn trees_count_line() {
    let out = dessin(&["trees", "6,4,2,1/4,1^9"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("trees    6"));
}

#[test]
fn usage_error_is_exit_one() {
    // Unknown flag.
    let out = dessin(&["orbits", "1,1/2", "--prime", "2", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    // Missing subcommand.
    let out2 = dessin(&[]);
    assert_eq!(out2.status.code(), Some(1));
    // Unknown format value.
    let out3 = dessin(&["polygon", "--poly", "1,1", "--prime", "2", "--format", "yaml"]);
    assert_eq!(out3.status.code(), Some(1));
}

#[test]
fn computational_failure_is_exit_two() {
    // Zero polynomial has no Newton polygon.
    let out = dessin(&["polygon", "--poly", "0", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    // Non-prime.
    let out2 = dessin(&["orbits", "1,1/2", "--prime", "4"]);
    assert_eq!(out2.status.code(), Some(2));
    // Invalid passport.
    let out3 = dessin(&["trees", "2,2/3,1"]);
    assert_eq!(out3.status.code(), Some(2));
}

#[test]
fn verify_single_criterion() {
    let out = dessin(&["verify-paper", "--only", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("criterion  3 [PASS]"));
    assert!(text.contains("1 passed, 0 failed"));
}

#[test]
fn shabat_eliminant() {
    let out = dessin(&["shabat", "2,1,1/3,1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("6,-8,3"));
    assert!(text.contains("expected degree 2 (match: true)"));
}

#[test]
fn out_file_matches_stdout_payload() {
    let dir = std::env::temp_dir().join("dessin-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("polygon.json");
    let out = dessin(&[
        "polygon",
        "--poly",
        "6,-8,3",
        "--prime",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(file.trim_end(), stdout(&out).trim_end());
}
