//! End-to-end runs of the `ctqw` binary.

use std::process::{Command, Output};

fn ctqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctqw"))
        .args(args)
        .env_remove("CTQW_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV document as `column -> cell` maps.
fn records(text: &str) -> Vec<std::collections::BTreeMap<String, String>> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    lines
        .map(|l| header.iter().map(|h| h.to_string()).zip(l.split(',').map(str::to_string)).collect())
        .collect()
}

#[test]
fn spectrum_both_paths_agree_on_barbell_3() {
    let o = ctqw(&["spectrum", "--family", "barbell", "--n", "3", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# ctqw "));
    assert!(text.contains("# agreement=pass"));
    let rows = records(&text);
    assert_eq!(rows.iter().filter(|r| r["path"] == "analytic").count(), 5);
    assert_eq!(rows.iter().filter(|r| r["path"] == "numeric").count(), 5);
    let degenerate = rows.iter().find(|r| r["label"] == "BarbellDegenerate").unwrap();
    assert_eq!(degenerate["eigenvalue"], "-5.0000000000000000e-1");
    assert_eq!(degenerate["multiplicity"], "2");
}

#[test]
fn center_dynamical_ipr_of_star_full_8() {
    let o = ctqw(&["ipr", "--family", "star1", "--n", "8", "--mode", "dynamical", "--start", "class:Center"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = records(&stdout(&o));
    assert_eq!(rows.len(), 1);
    let value: f64 = rows[0]["value"].parse().unwrap();
    assert!((value - 4229.0 / 6561.0).abs() < 1e-12);
    assert_eq!(rows[0]["reference_formula"], "(n^4+2n^2+5)/(n+1)^4");
}

#[test]
fn json_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ipr.json");
    let o = ctqw(&[
        "ipr", "--family", "star2", "--n", "4", "--mode", "dynamical", "--all-classes",
        "--format", "json", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["family"], "star2");
    assert_eq!(doc["n"], 4);
    assert_eq!(doc["provenance"]["tool"], "ctqw");
    assert_eq!(doc["provenance"]["tolerances"]["completeness"], 1e-9);
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 3);
    for r in records {
        let v = r["value"].as_f64().unwrap();
        assert!(v > 1.0 / 17.0 && v <= 1.0);
        assert!(r["symmetry_deviation"].as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn eigenstate_ipr_covers_every_mode() {
    let o = ctqw(&["ipr", "--family", "star1", "--n", "4", "--mode", "eigenstate", "--method", "numeric"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(records(&stdout(&o)).len(), 17);
}

#[test]
fn limit_rows_sum_to_one() {
    let o = ctqw(&["limit", "--family", "barbell", "--n", "4", "--all-vertices"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = records(&stdout(&o));
    assert_eq!(rows.len(), 8);
    for r in rows {
        let total: f64 = (0..8).map(|i| r[&format!("p{i}")].parse::<f64>().unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}

#[test]
fn evolve_grid_and_determinism_across_thread_counts() {
    let args = ["evolve", "--family", "star2", "--n", "3", "--start", "index:4", "--t-max", "2", "--dt", "0.25"];
    let one = ctqw(&[&args[..], &["--jobs", "1"]].concat());
    let four = ctqw(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
    let rows = records(&stdout(&one));
    assert_eq!(rows.len(), 9);
    assert!((rows[0]["p4"].parse::<f64>().unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn jobs_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ctqw"))
        .args(["export", "--family", "barbell", "--n", "3"])
        .env("CTQW_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(records(&stdout(&o)).len(), 7);
    let bad = Command::new(env!("CARGO_BIN_EXE_ctqw"))
        .args(["export", "--family", "barbell", "--n", "3"])
        .env("CTQW_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(64));
}

#[test]
fn export_json_graph() {
    let o = ctqw(&["export", "--family", "star1", "--n", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // Three triangles plus nine spokes.
    assert_eq!(doc["graph"]["edges"].as_array().unwrap().len(), 18);
    assert_eq!(doc["provenance"]["command"], "export");
}

#[test]
fn sweep_reports_exact_model() {
    let o = ctqw(&["sweep", "--metric", "v1_center_return", "--n", "2,4,8,16"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# passed=true"));
    assert!(records(&text).iter().all(|r| r["passed"] == "true"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(ctqw(&["spectrum", "--family", "wheel", "--n", "4"]).status.code(), Some(64));
    assert_eq!(ctqw(&["spectrum", "--family", "barbell", "--n", "2"]).status.code(), Some(64));
    assert_eq!(ctqw(&["ipr", "--family", "barbell", "--n", "4", "--mode", "dynamical"]).status.code(), Some(64));
    assert_eq!(
        ctqw(&["ipr", "--family", "barbell", "--n", "4", "--mode", "dynamical", "--start", "index:99"]).status.code(),
        Some(64)
    );
    assert_eq!(ctqw(&["sweep", "--metric", "nope", "--n", "4"]).status.code(), Some(64));
    assert_eq!(ctqw(&["verify", "--tol", "12=1e-3"]).status.code(), Some(64));
    assert_eq!(
        ctqw(&["spectrum", "--family", "star1", "--n", "30", "--method", "numeric"]).status.code(),
        Some(64)
    );
    assert_eq!(ctqw(&["--version"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let o = ctqw(&["export", "--family", "barbell", "--n", "3", "--output", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_reports_failures_with_exit_2() {
    let o = ctqw(&["verify", "--scope", "star1", "--n-cap", "40", "--criteria-only"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("# failed_ids=05"));
    let rows = records(&text);
    assert!(rows.iter().all(|r| r["section"] == "criterion"));
    assert!(rows.iter().any(|r| r["id"] == "01" && r["passed"] == "true"));
}
