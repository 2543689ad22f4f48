//! End-to-end tests against the built binary: exit codes, output
//! formats, and flag validation.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn rewb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rewb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn match_exit_codes() {
    let yes = rewb(&["match", "--pattern", r"((?:a|b)+)\1", "--input", "abab"]);
    assert_eq!(code(&yes), 0, "{yes:?}");
    assert!(stdout(&yes).starts_with("matched"));

    let no = rewb(&["match", "--pattern", r"((?:a|b)+)\1", "--input", "aba"]);
    assert_eq!(code(&no), 1);
    assert_eq!(stdout(&no).trim(), "no match");

    let bad = rewb(&["match", "--pattern", r"(a\1", "--input", "aa"]);
    assert_eq!(code(&bad), 2);
    assert!(!bad.stderr.is_empty());
}

#[test]
fn match_json_reports_stats() {
    let out = rewb(&[
        "match",
        "--pattern",
        r"(a+)b\1",
        "--input",
        "aabaa",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["matched"], Value::Bool(true));
    assert_eq!(report["algo"], "fast");
    assert!(report["stats"]["delta_steps"].as_u64().is_some());
}

#[test]
fn engines_agree_via_exit_codes() {
    for (subject, expected) in [("abab", 0), ("aba", 1), ("", 1)] {
        for algo in ["fast", "cubic", "brute"] {
            let out = rewb(&[
                "match",
                "--pattern",
                r"((?:a|b)+)\1",
                "--input",
                subject,
                "--algo",
                algo,
            ]);
            assert_eq!(code(&out), expected, "algo {algo} subject {subject:?}");
        }
    }
}

#[test]
fn brute_reports_a_witness() {
    let out = rewb(&[
        "match",
        "--pattern",
        r"(a+)b\1",
        "--input",
        "aabaa",
        "--algo",
        "brute",
        "--json",
    ]);
    let report: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["witness"]["i"], 1);
    assert_eq!(report["witness"]["k"], 2);
    assert_eq!(report["witness"]["j"], 4);
}

#[test]
fn brute_cap_rejects_long_subjects() {
    let long = "ab".repeat(40);
    let refused = rewb(&[
        "match",
        "--pattern",
        r"(a)\1",
        "--input",
        &long,
        "--algo",
        "brute",
    ]);
    assert_eq!(code(&refused), 2);
    let allowed = rewb(&[
        "match",
        "--pattern",
        r"(a)\1",
        "--input",
        &long,
        "--algo",
        "brute",
        "--brute-cap",
        "100",
    ]);
    assert_eq!(code(&allowed), 1);
}

#[test]
fn subject_sources_are_exclusive() {
    let neither = rewb(&["match", "--pattern", r"(a)\1"]);
    assert_eq!(code(&neither), 2);

    let both = rewb(&[
        "match",
        "--pattern",
        r"(a)\1",
        "--input",
        "aa",
        "--input-file",
        "/dev/null",
    ]);
    assert_eq!(code(&both), 2);
}

#[test]
fn input_file_and_trim() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(b"aa\n").unwrap();
    let path = file.path().to_str().unwrap();

    // verbatim: the trailing newline is part of the subject
    let raw = rewb(&["match", "--pattern", r"(a)\1", "--input-file", path]);
    assert_eq!(code(&raw), 1);

    let trimmed = rewb(&[
        "match",
        "--pattern",
        r"(a)\1",
        "--input-file",
        path,
        "--trim",
    ]);
    assert_eq!(code(&trimmed), 0);

    let missing = rewb(&["match", "--pattern", r"(a)\1", "--input-file", "/no/such/file"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn repeats_streams_the_repeat_structure() {
    let out = rewb(&["repeats", "--input", "mississimiss"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<Value> = stdout(&out)
        .lines()
        .map(|line| serde_json::from_str(line).unwrap())
        .collect();
    assert_eq!(lines.len(), 8);
    let mut repeats: Vec<&str> = lines.iter().map(|l| l["repeat"].as_str().unwrap()).collect();
    repeats.sort_unstable();
    assert_eq!(
        repeats,
        ["i", "iss", "issi", "miss", "s", "si", "ss", "ssi"]
    );
    let iss = lines.iter().find(|l| l["repeat"] == "iss").unwrap();
    assert_eq!(iss["len"], 3);
    assert_eq!(iss["idx"], serde_json::json!([2, 5, 10]));
    assert_eq!(iss["d"], 0);
}

#[test]
fn repeats_of_overlapping_runs_report_depth() {
    let out = rewb(&["repeats", "--input", "aaaa"]);
    let lines: Vec<Value> = stdout(&out)
        .lines()
        .map(|line| serde_json::from_str(line).unwrap())
        .collect();
    let aaa = lines.iter().find(|l| l["repeat"] == "aaa").unwrap();
    assert_eq!(aaa["idx"], serde_json::json!([1, 2]));
    assert_eq!(aaa["d"], 2);
}

#[test]
fn check_reports_clean_sweep() {
    let out = rewb(&["check", "--count", "150", "--seed", "7", "--max-len", "8"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("no divergence"));

    let json = rewb(&[
        "check", "--count", "50", "--seed", "7", "--max-len", "8", "--json",
    ]);
    let report: Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    assert_eq!(report["checked"], 50);
    assert_eq!(report["divergences"], 0);
}

#[test]
fn bench_emits_one_row_per_size() {
    let out = rewb(&[
        "bench",
        "--pattern",
        r"(a+)b\1",
        "--family",
        "aab",
        "--sizes",
        "12,24",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let rows: Vec<Value> = stdout(&out)
        .lines()
        .map(|line| serde_json::from_str(line).unwrap())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 12);
    assert_eq!(rows[1]["n"], 24);
    assert!(rows[0]["steps"].as_u64().unwrap() > 0);
    assert!(rows[1]["steps"].as_u64() > rows[0]["steps"].as_u64());

    let brute = rewb(&["bench", "--pattern", r"(a)\1", "--algo", "brute"]);
    assert_eq!(code(&brute), 2);
}
