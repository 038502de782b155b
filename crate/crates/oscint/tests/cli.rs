//! End-to-end tests of the `oscint` binary: exit codes, table schemas,
//! determinism, and the error channel.

use std::path::PathBuf;
use std::process::{Command, Output};

fn oscint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oscint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("oscint-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn transform_corpus_sweep_with_divergence_column() {
    let out = oscint(&["transform", "--corpus", "ex1d", "--grid", "-2:2:9", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "s,re,im,status,err_est,evals");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    // s = 0 sits mid-grid and must be reported diverged, not converged-0
    let zero_row = rows[4];
    assert!(zero_row.starts_with("0,"), "{zero_row}");
    assert!(zero_row.contains(",diverged,"), "{zero_row}");
    // the others match −iπ·sgn(s)e^{−|s|}
    for row in [rows[0], rows[8]] {
        let cols: Vec<&str> = row.split(',').collect();
        let s: f64 = cols[0].parse().unwrap();
        let im: f64 = cols[2].parse().unwrap();
        let want = -std::f64::consts::PI * s.signum() * (-s.abs()).exp();
        assert!((im - want).abs() < 1e-6, "{row}");
        assert!(cols[3] == "converged");
    }
}

#[test]
fn transform_all_points_converge_for_even_chirp() {
    let out = oscint(&["transform", "--corpus", "ex1b", "--grid", "0:5:6", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.contains(",converged,")));
}

#[test]
fn invalid_grid_is_a_config_error() {
    let out = oscint(&["transform", "--corpus", "ex1b", "--grid", "0:5:0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    // machine-readable error document on stderr
    let doc: serde_json::Value = serde_json::from_str(err.trim()).expect("json error doc");
    assert_eq!(doc["exit"], 1);
}

#[test]
fn unknown_corpus_is_a_config_error() {
    let out = oscint(&["transform", "--corpus", "nope", "--grid", "0:1:2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_output_is_bit_stable() {
    let args = ["transform", "--corpus", "ex1c", "--grid", "2:4:3", "--tol", "1e-8"];
    let a = stdout_of(&oscint(&args));
    let b = stdout_of(&oscint(&args));
    assert_eq!(a, b);
}

#[test]
fn jobs_do_not_change_the_table() {
    let base = ["transform", "--corpus", "gauss", "--grid", "-2:2:12", "--tol", "1e-9"];
    let seq = stdout_of(&oscint(&base));
    let par = stdout_of(&oscint(&[
        "transform", "--corpus", "gauss", "--grid", "-2:2:12", "--tol", "1e-9", "--jobs", "4",
    ]));
    assert_eq!(seq, par);
}

#[test]
fn function_document_input() {
    let path = tmp_path("fn.json");
    std::fs::write(&path, r#"{"kind":"gauss_envelope","alpha":1.0,"coeffs":[1.0]}"#).unwrap();
    let out = oscint(&[
        "transform",
        "--function",
        path.to_str().unwrap(),
        "--grid",
        "0:2:3",
        "--tol",
        "1e-9",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout_of(&out);
    let first = text.lines().nth(1).unwrap();
    let re: f64 = first.split(',').nth(1).unwrap().parse().unwrap();
    assert!((re - std::f64::consts::PI.sqrt()).abs() < 1e-8);
    std::fs::remove_file(&path).ok();
}

#[test]
fn invert_recovers_known_value() {
    let out = oscint(&[
        "invert", "--corpus", "ex1d", "--kernel", "gauss", "--x0", "1", "--aperture", "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let re = doc["rows"][0]["re"].as_f64().unwrap();
    assert!((re - 0.5).abs() < 1e-3, "recovered {re}");
}

#[test]
fn invert_even_chirp_at_origin() {
    let out = oscint(&["invert", "--corpus", "ex1b", "--x0", "0", "--aperture", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let re = doc["rows"][0]["re"].as_f64().unwrap();
    let im = doc["rows"][0]["im"].as_f64().unwrap();
    assert!((re - 1.0).abs() < 1e-3 && im.abs() < 1e-3, "recovered {re}+{im}i");
}

#[test]
fn cesaro_kernel_is_refused() {
    let out = oscint(&["invert", "--corpus", "ex1d", "--kernel", "cesaro", "--x0", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("summability"), "{err}");
}

#[test]
fn verify_single_suites() {
    let out = oscint(&["verify", "--suite", "lemma1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = oscint(&["verify", "--suite", "lemma2", "--seed", "7", "--n", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("\"ok\": true"));
}

#[test]
fn verify_unknown_suite_is_config_error() {
    let out = oscint(&["verify", "--suite", "none"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_summary_written_to_file() {
    let path = tmp_path("summary.json");
    let out = oscint(&[
        "verify", "--suite", "kernels", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["suites"][0]["name"], "kernels");
    assert_eq!(doc["suites"][0]["failed"], 0);
    std::fs::remove_file(&path).ok();
}
