use std::path::PathBuf;

use serde_json::Value;

use super::output::SeriesRow;
use super::run;
use crate::arrangement::CellCount;

fn out_path(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cutproject-cli-{}-{tag}", std::process::id()))
}

/// Runs the CLI with output redirected to a file; returns the exit code and the output.
fn invoke(tag: &str, args: &[&str]) -> (i32, String) {
    let path = out_path(tag);
    let _ = std::fs::remove_file(&path);
    let mut argv = vec!["cutproject", "-o", path.to_str().unwrap()];
    argv.extend_from_slice(args);
    let code = run(argv);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    let _ = std::fs::remove_file(&path);
    (code, text)
}

fn json(tag: &str, args: &[&str]) -> Value {
    let mut argv = vec!["--format", "json"];
    argv.extend_from_slice(args);
    let (code, text) = invoke(tag, &argv);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&text).unwrap()
}

#[test]
fn validate_exit_codes() {
    let rational = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/rational_slope.scheme");
    assert_eq!(invoke("v-ok", &["validate", "octagonal"]).0, 0);
    assert_eq!(invoke("v-bad", &["validate", rational]).0, 2);
    assert_eq!(invoke("v-gate", &["alpha", rational]).0, 2);
    assert_eq!(invoke("v-missing", &["validate", "/nonexistent/x.scheme"]).0, 1);
    assert_eq!(invoke("v-usage", &["frobnicate"]).0, 1);
    assert_eq!(invoke("v-help", &["--help"]).0, 0);
}

#[test]
fn alpha_verdict_keys() {
    let v = json("alpha", &["alpha", "generic42"]);
    assert_eq!(v["verdict"]["alpha"], 4);
    assert_eq!(v["verdict"]["alpha_min"], 2);
    assert_eq!(v["verdict"]["finitely_generated"], false);
    assert_eq!(v["verdict"]["audit_consistent"], true);
    assert_eq!(v["bounds"]["lower"], 2);
    assert_eq!(v["bounds"]["upper"], 4);
    assert_eq!(v["subadditivity"], true);
}

#[test]
fn csingular_csv_round_trip() {
    let (code, text) = invoke("cs", &["--format", "csv", "csingular", "golden_sturmian", "--n-max", "8"]);
    assert_eq!(code, 0);
    let rows = SeriesRow::parse_csv(&text).unwrap();
    let c: Vec<Option<CellCount>> = rows.iter().map(|r| r.c).collect();
    let expected: Vec<Option<CellCount>> = (0..=8).map(|n| Some(CellCount::Exact(2 * n + 1))).collect();
    assert_eq!(c, expected);
    let v = json("cs-json", &["csingular", "golden_sturmian", "--n-max", "8"]);
    let back: Vec<SeriesRow> = serde_json::from_value(v["rows"].clone()).unwrap();
    assert_eq!(back, rows);
}

#[test]
fn output_is_independent_of_jobs() {
    let args = |j: &'static str| ["--jobs", j, "--format", "csv", "csingular", "octagonal", "--n-max", "4"];
    let (c1, one) = invoke("j1", &args("1"));
    let (c2, two) = invoke("j2", &args("2"));
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(one, two);
}

#[test]
fn compare_reports_equality() {
    let v = json("cmp", &["compare", "golden_sturmian", "--n-max", "6", "--min-seeds", "4096"]);
    assert_eq!(v["all_equal"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
}

#[test]
fn rauzy_export_and_rows() {
    let export = out_path("adj");
    let v = json("rz", &["rauzy", "fibonacci", "--n-max", "12", "--export", "3", "--export-path", export.to_str().unwrap()]);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["h1"] == 2));
    let adj = std::fs::read_to_string(&export).unwrap();
    let _ = std::fs::remove_file(&export);
    // Order 3: p(4) = 5 edges.
    assert_eq!(adj.lines().count(), 5);
}

#[test]
fn word_config_errors_are_validation_failures() {
    let path = out_path("bad.word");
    std::fs::write(&path, "kind = \"sturmian\"\n").unwrap();
    let code = invoke("bad-word", &["rauzy", path.to_str().unwrap()]).0;
    let _ = std::fs::remove_file(&path);
    assert_eq!(code, 2);
    assert_eq!(invoke("no-word", &["rauzy", "/nonexistent/x.word"]).0, 1);
}

#[test]
fn saturation_failure_exits_3() {
    assert_eq!(invoke("sat", &["rauzy", "fibonacci", "--n-max", "60", "--max-window", "4096"]).0, 3);
}

#[test]
fn lemma1_builtin_table() {
    let v = json("l1", &["lemma1", "golden_lemma1"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 31);
    assert_eq!(rows[0]["ratio"], "1/10");
}
