//! End-to-end tests of the compiled binary: exit codes, output schemas,
//! determinism, and config-file merging.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nullcone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn eval_base_fixture_hits_frozen_point() {
    let out = run(&["eval", "--t0", "-1", "--t1", "1", "--samples", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,gamma1,gamma2,gamma3,gamma4,singular,domain-error"
    );
    assert_eq!(text.lines().count(), 6, "header plus five rows");
    assert!(text.lines().any(|l| l == "0,1,0.5,-1,0.5,false,false"));
}

#[test]
fn derived_curve_collapses_onto_frame_field() {
    let out = run(&[
        "eval",
        "--kind",
        "gamma-w",
        "--psi",
        "t",
        "--t0",
        "0",
        "--t1",
        "1",
        "--samples",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out)
        .lines()
        .any(|l| l == "0,-0.4,-0.2,-0.4,0.2,false,false"));
}

#[test]
fn eval_rejects_single_sample() {
    let out = run(&["eval", "--samples", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("samples must be ≥ 2"));
}

#[test]
fn smarandache_verb_requires_kind() {
    let out = run(&["smarandache", "--psi", "t"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("--kind"));
}

#[test]
fn smarandache_verb_is_an_eval_alias() {
    let args = [
        "--kind",
        "xi-n",
        "--psi",
        "t/2",
        "--t0",
        "0",
        "--t1",
        "1",
        "--samples",
        "4",
    ];
    let eval: Vec<String> = ["eval"]
        .iter()
        .chain(args.iter())
        .map(|s| s.to_string())
        .collect();
    let alias: Vec<String> = ["smarandache"]
        .iter()
        .chain(args.iter())
        .map(|s| s.to_string())
        .collect();
    let eval_refs: Vec<&str> = eval.iter().map(String::as_str).collect();
    let alias_refs: Vec<&str> = alias.iter().map(String::as_str).collect();
    let a = run(&eval_refs);
    let b = run(&alias_refs);
    assert_eq!(code(&a), 0);
    assert_eq!(code(&b), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_suite_exits_two() {
    let out = run(&["verify", "--suite", "bogus"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("unknown suite `bogus`"));
}

#[test]
fn frame_gram_suite_passes() {
    let out = run(&["verify", "--suite", "frame-gram"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["header"]["tool"], "nullcone");
    assert_eq!(report["summary"]["unexpected_failures"], 0);
}

#[test]
fn audit_mismatches_fail_only_under_strict() {
    let relaxed = run(&["verify", "--suite", "smarandache-curvature-audit"]);
    assert_eq!(code(&relaxed), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&relaxed)).unwrap();
    let mismatches = report["summary"]["audit"]["mismatch"].as_u64().unwrap();
    assert!(
        mismatches > 0,
        "closed-form mismatches are expected findings"
    );

    let strict = run(&[
        "verify",
        "--suite",
        "smarandache-curvature-audit",
        "--strict",
    ]);
    assert_eq!(code(&strict), 1);
}

#[test]
fn singular_rows_are_flagged_and_exit_three() {
    let out = run(&[
        "eval",
        "--kind",
        "gamma-zeta-n",
        "--phi1",
        "t",
        "--phi2",
        "t",
        "--t0",
        "-1",
        "--t1",
        "1",
        "--samples",
        "3",
    ]);
    assert_eq!(code(&out), 3, "flagged rows set exit 3");
    let text = stdout_of(&out);
    assert!(
        text.lines().any(|l| l == "0,,,,,true,false"),
        "row still written:\n{text}"
    );
    assert_eq!(text.lines().count(), 4, "all rows written despite the flag");
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = run(&[
        "eval",
        "--t0",
        "0",
        "--t1",
        "1",
        "--samples",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).is_empty());
    let content = fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("t,gamma1,gamma2,gamma3,gamma4,singular,domain-error\n"));
    assert_eq!(content.lines().count(), 4);
}

#[test]
fn unwritable_output_path_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain-file");
    fs::write(&file, "x").unwrap();
    let bad = file.join("sub.csv");
    let out = run(&[
        "eval",
        "--t0",
        "0",
        "--t1",
        "1",
        "--samples",
        "2",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 4);
    assert!(stderr_of(&out).contains("cannot write"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "--suite", "lemma1"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let args = ["eval", "--t0", "-2", "--t1", "2", "--samples", "41"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_merges_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    fs::write(
        &path,
        r#"{ "fixture": "trigonometric", "t0": 0.0, "t1": 1.0, "samples": 3 }"#,
    )
    .unwrap();
    let out = run(&["eval", "--config", path.to_str().unwrap(), "--samples", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(
        text.lines().count(),
        6,
        "flag overrides the file's sample count"
    );

    // The fixture comes from the file: compare the t = 0.5 row against the
    // library's own evaluation, formatted the same way.
    let curve = nullcone::null_curve::ConeCurve::trigonometric(1.0, 2.0).unwrap();
    let g = curve.position(0.5).unwrap();
    let expected = format!("0.5,{},{},{},{},false,false", g[0], g[1], g[2], g[3]);
    assert!(
        text.lines().any(|l| l == expected),
        "missing row {expected} in:\n{text}"
    );
}

#[test]
fn invalid_config_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    fs::write(&path, r#"{ "no-such-field": 1 }"#).unwrap();
    let out = run(&["eval", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("invalid config"));
}

#[test]
fn frame_reports_curvatures_at_origin() {
    let out = run(&["frame", "--t", "0"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert!((row["kappa1"].as_f64().unwrap() - 1.0).abs() <= 1e-9);
    assert!(row["h"].as_f64().unwrap().abs() <= 1e-9);
    assert!(row["kappa2"].as_f64().unwrap().abs() <= 1e-9);
    let n: Vec<f64> = row["n"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let expected = [-0.2, 0.4, 0.2, 0.4];
    for (got, want) in n.iter().zip(expected) {
        assert!((got - want).abs() <= 1e-12, "N component {got} vs {want}");
    }
    assert_eq!(row["singular"], false);
}

#[test]
fn frame_rejects_non_json_format() {
    let out = run(&["frame", "--t", "0", "--format", "csv"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("JSON"));
}

#[test]
fn verify_text_format_renders_suite() {
    let out = run(&["verify", "--suite", "lemma1", "--format", "text"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("suite lemma1"));
    assert!(text.contains("summary:"));
}

#[test]
fn verify_pinned_formula_mode_reaches_the_header() {
    let out = run(&[
        "verify",
        "--suite",
        "smarandache-curvature-audit",
        "--formula-mode",
        "literal",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["header"]["formula_mode"], "literal");
    assert_eq!(report["header"]["corrections"].as_array().unwrap().len(), 0);
    assert_eq!(
        report["suites"][0]["audit_reports"]
            .as_array()
            .unwrap()
            .len(),
        7
    );
}

#[test]
fn explicit_generators_match_the_equivalent_fixture() {
    let out = run(&[
        "eval",
        "--f",
        "sinh(t)/2",
        "--g",
        "cosh(t)/2",
        "--m",
        "2",
        "--t0",
        "0",
        "--t1",
        "1",
        "--samples",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out)
        .lines()
        .any(|l| l == "0,1,0.5,-1,0.5,false,false"));
}

#[test]
fn eval_json_format_echoes_the_effective_config() {
    let out = run(&[
        "eval",
        "--t0",
        "0",
        "--t1",
        "1",
        "--samples",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["command"], "eval");
    assert_eq!(doc["effective-config"]["curve"]["fixture"], "hyperbolic");
    assert_eq!(doc["effective-config"]["samples"], 3);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
    assert_eq!(doc["rows"][0]["gamma"].as_array().unwrap().len(), 4);
}
