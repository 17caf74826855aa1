//! Black-box tests for the `qhl` binary: exit codes, output formats, and
//! determinism of structured reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn qhl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn deform_jackson_passes_and_reports_table() {
    let config = fixture("jackson.toml");
    let output = qhl(&["deform", "--config", config.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(exit_code(&output), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["command"], "deform");
    assert_eq!(report["instance"], "jackson");
    assert_eq!(report["pass"], true);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 8);
    let table = checks.iter().find(|c| c["name"] == "table").unwrap();
    let hf = table["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|row| row["bracket"] == "hf")
        .unwrap();
    assert_eq!(hf["e"], "0");
    assert_eq!(hf["h"], "0");
    assert_eq!(hf["f"], "-2*q*p0");
    let delta = checks.iter().find(|c| c["name"] == "delta").unwrap();
    assert_eq!(delta["delta"], "q");
    assert_eq!(delta["freedom"], "unique");
}

#[test]
fn structured_reports_are_byte_identical() {
    let config = fixture("jackson.toml");
    let args = [
        "deform",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "structured",
    ];
    let first = qhl(&args);
    let second = qhl(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn check_failure_exits_one() {
    let config = fixture("anomaly.toml");
    let output = qhl(&["check", "--config", config.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1);
    let text = stdout(&output);
    assert!(text.contains("check well_defined: fail"));
    assert!(text.contains("obstruction: 3"));
}

#[test]
fn config_errors_exit_two() {
    let bad = fixture("bad_symbol.toml");
    let output = qhl(&["deform", "--config", bad.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr.clone()).unwrap();
    assert!(stderr.contains("nope"));

    let output = qhl(&["deform"]);
    assert_eq!(exit_code(&output), 2);

    let output = qhl(&["named", "nosuch"]);
    assert_eq!(exit_code(&output), 2);

    let missing = fixture("does_not_exist.toml");
    let output = qhl(&["deform", "--config", missing.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn assume_flag_unlocks_gated_division() {
    let config = fixture("case1.toml");
    let without = qhl(&["delta", "--config", config.to_str().unwrap()]);
    assert_eq!(exit_code(&without), 1);
    assert!(stdout(&without).contains("--assume p0"));

    let with = qhl(&[
        "delta",
        "--config",
        config.to_str().unwrap(),
        "--assume",
        "p0",
    ]);
    assert_eq!(exit_code(&with), 0);
    assert!(stdout(&with).contains("delta = q1"));
}

#[test]
fn named_listing_shows_instances() {
    let output = qhl(&["named"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    for name in [
        "classical",
        "jackson",
        "jordanian",
        "solvable",
        "heisenberg",
        "polynomial3",
        "color",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn named_color_checks_grading() {
    let output = qhl(&["named", "color", "--format", "structured"]);
    assert_eq!(exit_code(&output), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["checks"][0]["name"], "color");
    assert_eq!(report["checks"][0]["pass"], true);
}

#[test]
fn named_operator_runs_full_pipeline() {
    let output = qhl(&["named", "jackson"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("check qhl: pass"));
    assert!(text.contains("beta = q"));
}

#[test]
fn deform_on_truncated_instance_passes() {
    let config = fixture("solvable.toml");
    let output = qhl(&[
        "deform",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(exit_code(&output), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["delta", "homlie", "jacobi", "qhl", "relations", "table", "well_defined"]
    );
}

#[test]
fn check_subcommand_runs_only_listed_checks() {
    let config = fixture("subset.toml");
    let output = qhl(&[
        "check",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(exit_code(&output), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["delta", "relations", "table"]);
}

#[test]
fn check_with_no_listed_checks_passes_vacuously() {
    let config = fixture("jackson.toml");
    let output = qhl(&["check", "--config", config.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout(&output).contains("result: pass (0/0 checks)"));
}

#[test]
fn quadratic_preset_counts_normal_words() {
    let output = qhl(&["quadratic", "--format", "structured", "--degree-bound", "6"]);
    assert_eq!(exit_code(&output), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let check = &report["checks"][0];
    assert_eq!(check["confluent"], true);
    assert_eq!(check["overlaps"], 1);
    assert_eq!(check["casimir_normal"], true);
    let counts: Vec<u64> = check["normal_word_counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(counts, [1, 3, 6, 10, 15, 21, 28]);
}

#[test]
fn quadratic_w_preset_is_confluent() {
    let config = fixture("quadratic_w.toml");
    let output = qhl(&[
        "quadratic",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(exit_code(&output), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["instance"], "w");
    assert_eq!(report["checks"][0]["confluent"], true);
}

#[test]
fn quadratic_custom_relations() {
    let config = fixture("custom_quadratic.toml");
    let output = qhl(&[
        "quadratic",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "structured",
        "--degree-bound",
        "3",
    ]);
    assert_eq!(exit_code(&output), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let counts: Vec<u64> = report["checks"][0]["normal_word_counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(counts, [1, 2, 3, 4]);
}

#[test]
fn text_output_reports_timing_but_structured_does_not() {
    let config = fixture("jackson.toml");
    let text = qhl(&["deform", "--config", config.to_str().unwrap()]);
    assert!(stdout(&text).contains("elapsed:"));
    let structured = qhl(&[
        "deform",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert!(!stdout(&structured).contains("elapsed"));
}
