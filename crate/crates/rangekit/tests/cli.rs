//! End-to-end tests of the `rangekit` binary: flag handling, file formats,
//! and exit codes (0 pass, 1 check failure, 2 usage/input error).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rangekit"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn data_rows(path: &Path) -> usize {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .count()
}

#[test]
fn simulate_writes_expected_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "simulate",
            "--process",
            "drift:1.0",
            "--horizon",
            "100",
            "--step",
            "0.01",
            "--seed",
            "7",
            "--out",
            "path.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = dir.path().join("path.csv");
    assert_eq!(data_rows(&csv), 10001);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("t,value\n"));
}

#[test]
fn simulate_requires_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "simulate",
            "--process",
            "bm",
            "--horizon",
            "10",
            "--step",
            "0.1",
            "--out",
            "x.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_rejects_unknown_process_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "simulate",
            "--process",
            "lepage:3",
            "--horizon",
            "10",
            "--step",
            "0.1",
            "--seed",
            "1",
            "--out",
            "x.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error:"), "stderr: {err}");
}

#[test]
fn simulate_walk_writes_integer_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "simulate",
            "--process",
            "walk:0.8",
            "--horizon",
            "1000",
            "--seed",
            "1",
            "--out",
            "walk.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = dir.path().join("walk.csv");
    assert_eq!(data_rows(&csv), 1001);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,value\n"));

    // The range subcommand accepts the walk file via connect-the-dots.
    let out = run(
        &["range", "--input", "walk.csv", "--out", "walk_range.csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("walk_range.csv")).unwrap();
    assert!(text.starts_with("t,value,sup,inf,range\n"));
}

#[test]
fn simulate_multidim_writes_one_file_per_coordinate() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "simulate",
            "--process",
            "mbm:2",
            "--horizon",
            "5",
            "--step",
            "0.5",
            "--seed",
            "3",
            "--out",
            "coords.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(dir.path().join("coords_0.csv").exists());
    assert!(dir.path().join("coords_1.csv").exists());
}

#[test]
fn range_pipeline_from_simulate() {
    let dir = tempfile::tempdir().unwrap();
    run(
        &[
            "simulate",
            "--process",
            "drift:1",
            "--horizon",
            "10",
            "--step",
            "0.01",
            "--seed",
            "5",
            "--out",
            "p.csv",
        ],
        dir.path(),
    );
    let out = run(&["range", "--input", "p.csv", "--out", "r.csv"], dir.path());
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("r.csv")).unwrap();
    let ranges: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(ranges.windows(2).all(|w| w[1] >= w[0]), "range non-decreasing");
    assert_eq!(ranges[0], 0.0);
}

#[test]
fn range_rejects_malformed_csv_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.csv"), "t,value\n0,0\noops,1\n").unwrap();
    let out = run(&["range", "--input", "bad.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn range_rejects_decreasing_timestamps() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.csv"), "t,value\n0,0\n2,1\n1,0\n").unwrap();
    let out = run(&["range", "--input", "bad.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "stderr: {err}");
}

fn small_manifest(checks: &str, extra: &str) -> String {
    format!(
        r#"{{
          "name": "small",
          "spec": {{ "process": "drift:1.0", "horizon": 100.0, "step": 0.05, "seed": 21 }},
          "replicas": 2,
          "checks": [{checks}],{extra}
          "output": {{ "format": "json", "path": "report.json" }}
        }}"#
    )
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("m.json"),
        small_manifest("\"duality\", \"involution\"", ""),
    )
    .unwrap();
    let out = run(&["verify", "m.json", "--no-timestamp"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report = fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert!(report.contains("\"schema_version\": 1"));
    assert!(!report.contains("generated_at_unix"));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("check duality: PASS"));
}

#[test]
fn verify_rejects_unknown_check_before_simulating() {
    let dir = tempfile::tempdir().unwrap();
    // A horizon this large would take minutes to simulate; rejection must
    // come from manifest validation alone.
    let manifest = r#"{
      "name": "huge",
      "spec": { "process": "bm", "horizon": 1000000.0, "step": 0.001, "seed": 1 },
      "replicas": 100,
      "checks": ["turbo_check"],
      "output": { "format": "json", "path": "r.json" }
    }"#;
    fs::write(dir.path().join("m.json"), manifest).unwrap();
    let start = std::time::Instant::now();
    let out = run(&["verify", "m.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(start.elapsed().as_secs() < 30, "must fail fast");
    assert!(!dir.path().join("r.json").exists());
}

#[test]
fn verify_returns_one_on_check_failure() {
    let dir = tempfile::tempdir().unwrap();
    // An impossible tolerance forces an honest failure.
    fs::write(
        dir.path().join("m.json"),
        small_manifest("\"range_slope\"", "\n          \"tolerance\": 1e-12,"),
    )
    .unwrap();
    let out = run(&["verify", "m.json", "--no-timestamp"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    // The report is written even when checks fail.
    let report = fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert!(report.contains("\"pass\": false"));
}

#[test]
fn verify_csv_format_also_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = r#"{
      "name": "csvout",
      "spec": { "process": "drift:1.0", "horizon": 100.0, "step": 0.05, "seed": 21 },
      "replicas": 1,
      "checks": ["duality"],
      "output": { "format": "csv", "path": "table.csv" }
    }"#;
    fs::write(dir.path().join("m.json"), manifest).unwrap();
    let out = run(&["verify", "m.json", "--no-timestamp"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let table = fs::read_to_string(dir.path().join("table.csv")).unwrap();
    assert!(table.starts_with("check,metric,value\n"));
    assert!(dir.path().join("table.json").exists());
}

#[test]
fn verify_out_flag_overrides_destination() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("m.json"), small_manifest("\"duality\"", "")).unwrap();
    let out = run(
        &["verify", "m.json", "--no-timestamp", "--out", "custom.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("custom.json").exists());
    assert!(!dir.path().join("report.json").exists());
}

#[test]
fn verify_reports_are_byte_identical_without_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("m.json"),
        small_manifest("\"range_slope\", \"duality\"", ""),
    )
    .unwrap();
    run(
        &["verify", "m.json", "--no-timestamp", "--out", "a.json"],
        dir.path(),
    );
    run(
        &["verify", "m.json", "--no-timestamp", "--out", "b.json"],
        dir.path(),
    );
    let a = fs::read(dir.path().join("a.json")).unwrap();
    let b = fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
}
