//! End-to-end command behaviour, driven through `run`.

use std::path::PathBuf;

use serde_json::Value;

use super::*;

fn ok(args: &[&str]) -> String {
    let out = run(std::iter::once("ngfisk").chain(args.iter().copied()));
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    assert!(out.stderr.is_empty());
    out.stdout
}

fn ok_json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).expect("valid JSON")
}

fn fails(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["ngfisk", "--format", "json"];
    full.extend_from_slice(args);
    let out = run(full);
    assert!(out.stdout.is_empty());
    (serde_json::from_str(&out.stderr).expect("error record is JSON"), out.code)
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

struct TempFile(PathBuf);

impl TempFile {
    fn new(tag: &str, contents: &str) -> Self {
        let path = std::env::temp_dir().join(format!("ngfisk-{}-{tag}.txt", std::process::id()));
        std::fs::write(&path, contents).unwrap();
        TempFile(path)
    }

    fn path(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

#[test]
fn describe_builtin_and_files() {
    let v = ok_json(&["describe", "--data", "builtin:dataFT"]);
    assert_eq!(v["Dataset"]["n"], 101);
    assert_eq!(v["Summary"]["min"], 0.01);
    assert_eq!(v["Summary"]["max"], 7.89);

    let f = TempFile::new("four", "1\n2, 3\t4\n");
    let v = ok_json(&["describe", "--data", f.path()]);
    assert_eq!(v["Summary"]["median"], 2.5);

    let csv = ok(&["--format", "csv", "describe", "--data", f.path()]);
    let rows = csv_rows(&csv);
    assert_eq!(rows[0], ["n", "min", "q1", "median", "mean", "q3", "max"]);
    assert_eq!(rows[1], ["4", "1", "1.75", "2.5", "2.5", "3.25", "4"]);
}

#[test]
fn bad_data_is_reported() {
    let f = TempFile::new("neg", "1.0\n-1\n");
    let (e, code) = fails(&["describe", "--data", f.path()]);
    assert_eq!(code, 1);
    assert_eq!(e["Error"]["kind"], "parse");
    let msg = e["Error"]["message"].as_str().unwrap();
    assert!(msg.contains("-1") && msg.contains("line 2"), "{msg}");

    let (e, _) = fails(&["describe", "--data", "/nonexistent/ngfisk/data.txt"]);
    assert_eq!(e["Error"]["kind"], "io");
}

#[test]
fn fit_reports_ridge_and_boundary() {
    let v = ok_json(&["fit", "--data", "builtin:dataFT"]);
    let f = &v["FitResult"];
    assert_eq!(f["model"], "NG-F");
    assert_eq!(f["ridge"], true);
    assert_eq!(f["at_boundary"][2], true);
    assert!((f["estimates"][1].as_f64().unwrap() - 0.982).abs() < 0.01);
    assert!(f["std_errors"][0].is_null() && f["std_errors"][3].is_null());

    let csv = ok(&["--format", "csv", "fit", "--data", "builtin:dataFT"]);
    let rows = csv_rows(&csv);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[3][1], "theta");
    assert_eq!(rows[3][6], "true");
}

#[test]
fn fixed_parameters_are_held() {
    let v = ok_json(&["fit", "--data", "builtin:dataFT", "--fix", "delta=0.3", "--starts", "2"]);
    let f = &v["FitResult"];
    assert_eq!(f["estimates"][3], 0.3);
    assert_eq!(f["fixed"][3], true);
}

#[test]
fn degenerate_data_is_rejected() {
    let f = TempFile::new("single", "2.5\n");
    let (e, code) = fails(&["fit", "--data", f.path()]);
    assert_eq!(code, 1);
    assert_eq!(e["Error"]["kind"], "degenerate_data");
}

#[test]
fn unknown_models_fail_before_loading_data() {
    let (e, code) = fails(&["fit", "--model", "lognormal", "--data", "/nonexistent"]);
    assert_eq!(code, 1);
    assert_eq!(e["Error"]["kind"], "unknown_model");
    let (e, _) = fails(&["compare", "--models", "NG-F,gamma", "--data", "/nonexistent"]);
    assert_eq!(e["Error"]["kind"], "unknown_model");
}

#[test]
fn single_model_compare() {
    let v = ok_json(&["compare", "--models", "FW", "--data", "builtin:dataFT"]);
    let rows = v["ModelScore"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["rank"], 1);
    assert_eq!(rows[0]["name"], "FW");
    assert!(v["errors"].as_array().unwrap().is_empty());
}

#[test]
fn simulate_enforces_minimum_replications() {
    let (e, code) = fails(&["simulate", "--case", "1", "--n", "25", "--reps", "39"]);
    assert_eq!(code, 1);
    assert!(e["Error"]["message"].as_str().unwrap().contains("40"));
    let (e, _) = fails(&["simulate", "--truth", "1,2,3,1.5", "--n", "25", "--reps", "40"]);
    assert_eq!(e["Error"]["kind"], "invalid_parameter");
}

#[test]
fn simulate_csv_rows() {
    let csv = ok(&["--format", "csv", "simulate", "--case", "1", "--n", "30", "--reps", "40", "--seed", "3"]);
    let rows = csv_rows(&csv);
    assert_eq!(rows[0][..4], ["n", "parameter", "truth", "mle"]);
    assert_eq!(rows.len(), 1 + 5);
    for row in &rows[1..] {
        assert_eq!(row[0], "30");
        let (mse, bias, var): (f64, f64, f64) = (row[4].parse().unwrap(), row[5].parse().unwrap(), row[8].parse().unwrap());
        assert!((mse - (var + bias * bias)).abs() <= 1e-5 * mse.max(1e-12));
    }
}

#[test]
fn curves_at_origin_and_known_point() {
    let csv = ok(&["curves", "--truth", "1.5,2,2.5,0.25", "--grid", "0,1.5"]);
    let rows = csv_rows(&csv);
    assert_eq!(rows[0], ["x", "pdf", "cdf", "survival", "hazard", "flag"]);
    assert_eq!(rows[1][2], "0");
    assert_eq!(rows[1][3], "1");
    let p = NgFiskParams::new(1.5, 2.0, 2.5, 0.25).unwrap();
    let want = [p.pdf(1.5).unwrap(), p.cdf(1.5).unwrap(), p.sf(1.5).unwrap(), p.hazard(1.5).unwrap()];
    for (cell, w) in rows[2][1..5].iter().zip(want) {
        assert_eq!(cell, &format_sig(w, 6));
    }
}

#[test]
fn hazard_decreases_when_beta_at_most_one() {
    for truth in ["2,1,1.5,0.4", "0.7,0.6,3,0.1", "5,0.95,0.5,0.8"] {
        let v = ok_json(&["--format", "json", "curves", "--truth", truth, "--grid", "0.05:20:200"]);
        let h: Vec<f64> = v["CurveRow"].as_array().unwrap().iter().map(|r| r["hazard"].as_f64().unwrap()).collect();
        assert!(h.windows(2).all(|w| w[1] < w[0]), "{truth}");
    }
}

#[test]
fn sample_output() {
    assert_eq!(ok(&["sample", "--truth", "1.5,2,2.5,0.25", "--n", "0"]), "");
    let a = ok(&["sample", "--truth", "1.5,2,2.5,0.25", "--n", "50", "--seed", "4"]);
    assert_eq!(a, ok(&["sample", "--truth", "1.5,2,2.5,0.25", "--n", "50", "--seed", "4"]));
    assert_ne!(a, ok(&["sample", "--truth", "1.5,2,2.5,0.25", "--n", "50", "--seed", "5"]));
    assert_eq!(a.lines().count(), 50);
    assert!(a.lines().all(|l| l.parse::<f64>().unwrap() > 0.0));

    let (e, _) = fails(&["sample", "--truth", "1,2,3", "--n", "5"]);
    assert_eq!(e["Error"]["kind"], "arity");
}

#[test]
fn sample_output_feeds_fit() {
    let drawn = ok(&["sample", "--truth", "1.5,2,2.5,0.25", "--n", "300", "--seed", "1"]);
    let f = TempFile::new("pipe", &drawn);
    let v = ok_json(&["fit", "--data", f.path(), "--starts", "3"]);
    assert_eq!(v["Dataset"]["n"], 300);
    assert_eq!(v["FitResult"]["converged"], true);
    let c = v["FitResult"]["effective_scale"].as_f64().unwrap();
    let truth_c = NgFiskParams::new(1.5, 2.0, 2.5, 0.25).unwrap().effective_burr().c;
    assert!((c / truth_c - 1.0).abs() < 0.5, "c = {c}");
}
