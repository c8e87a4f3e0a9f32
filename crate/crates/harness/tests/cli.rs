use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lmean(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmean"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_matrix(dir: &Path, name: &str, json: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_string()
}

const JORDAN: &str = r#"{"n":2,"entries":[[0,0],[1,0],[0,0],[0,0]]}"#;

#[test]
fn transform_of_jordan_block_is_half_block() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "j.json", JORDAN);
    let out = lmean(&["transform", &m, "--lambda", "0.5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 2);
    let e = v["entries"].as_array().unwrap();
    assert!((e[1][0].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!(e[0][0].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn transform_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "j.json", JORDAN);
    let out_path = dir.path().join("d.json");
    let out = lmean(&["transform", &m, "--kind", "duggal", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out_path).unwrap()).unwrap();
    assert!(v["entries"].as_array().unwrap().iter().all(|z| z[0].as_f64().unwrap().abs() < 1e-12));
}

#[test]
fn gauges_reports_jordan_radius() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "j.json", JORDAN);
    let out = lmean(&["gauges", &m]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["norm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let lo = v["numericalRadius"]["lo"].as_f64().unwrap();
    let hi = v["numericalRadius"]["hi"].as_f64().unwrap();
    assert!(lo <= 0.5 + 1e-12 && 0.5 - 1e-12 <= hi);
}

#[test]
fn malformed_matrix_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "bad.json", r#"{"n":2,"entries":[[0,0]]}"#);
    let out = lmean(&["gauges", &m]);
    assert_eq!(out.status.code(), Some(2));
    let missing = lmean(&["gauges", dir.path().join("none.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn range_csv_traces_a_circle_for_jordan_block() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "j.json", JORDAN);
    let out = lmean(&["range", &m, "--points", "32"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,re,im,support"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 32);
    for r in rows {
        assert!((r[3] - 0.5).abs() < 1e-10);
        assert!((r[1].hypot(r[2]) - 0.5).abs() < 1e-10);
    }
}

#[test]
fn shift_lab_geometric_converges() {
    let out = lmean(&["shift-lab", "--rule", "geometric", "--ratio", "0.5", "--max-iter", "20"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("mIter,windowError\n"));
    let errs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn shift_lab_rejects_bad_lambda() {
    let out = lmean(&["shift-lab", "--rule", "harmonic", "--lambda", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_reproducible_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = lmean(&["verify", "--corpus", "24", "--seed", "42", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let ja = fs::read(&a).unwrap();
    assert_eq!(ja, fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_rejects_lambda_outside_unit_interval() {
    let out = lmean(&["verify", "--corpus", "2", "--lambda-grid", "0,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn examples_exit_code_reflects_spectrum_mismatch() {
    let out = lmean(&["examples"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let failing: Vec<&str> = entries
        .iter()
        .filter(|e| e["pass"] == false)
        .map(|e| e["group"].as_str().unwrap())
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|g| *g == "spectrum"));
}

#[test]
fn generalized_mean_at_zero_flags_singular_input() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "j.json", JORDAN);
    let out = lmean(&["transform", &m, "--kind", "generalized", "--t", "0"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("range projection"));
}
