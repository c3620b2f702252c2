use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use multisection::{fit_linear, read_sweep_csv};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multisection"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn solve_square_root_of_eight_by_bisection() {
    let out = run(&["solve", "--corpus", "3", "--sections", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let root = json(&out)["root"].as_f64().unwrap();
    let expected = -2.0 * 2f64.sqrt();
    assert!((root - expected).abs() <= 2.0 * f64::EPSILON * 2.0, "{root}");
}

#[test]
fn solve_quarter_pi_with_81_sections() {
    let out = run(&["solve", "--corpus", "1", "--sections", "81", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["root"].as_f64().unwrap(), std::f64::consts::FRAC_PI_4);
    assert_eq!(report["function_evaluations"], 80 * report["iterations"].as_u64().unwrap() + 2);
}

#[test]
fn solve_text_output_has_all_fields() {
    let out = run(&["solve", "--function", "square-8", "--lo", "-5", "--hi", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for field in ["root", "residual", "iterations", "evaluations"] {
        assert!(text.contains(field), "{text}");
    }
}

#[test]
fn one_section_is_an_argument_error() {
    let out = run(&["solve", "--corpus", "3", "--sections", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("N >= 2"), "{}", stderr(&out));
}

#[test]
fn missing_sign_change_exits_two() {
    let out = run(&["solve", "--function", "square-8", "--lo", "0", "--hi", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_three_and_help_exits_zero() {
    assert_eq!(run(&["solve", "--bogus"]).status.code(), Some(3));
    assert_eq!(run(&["solve", "--corpus", "7"]).status.code(), Some(3));
    assert_eq!(run(&["solve", "--function", "nope", "--lo", "0", "--hi", "1"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn predict_table_rows() {
    for (ratio, n, rel) in [("273", 81, 0.203), ("360", 100, 0.191)] {
        let out = run(&["predict", "--ratio", ratio, "--json"]);
        assert_eq!(out.status.code(), Some(0));
        let report = json(&out);
        assert_eq!(report["n_min_integer"], n);
        assert!((report["rel_eff"].as_f64().unwrap() - rel).abs() <= 5e-4);
    }
}

#[test]
fn predict_small_ratio_limit() {
    let out = run(&["predict", "--ratio", "1e-9", "--json"]);
    let report = json(&out);
    assert_eq!(report["n_min_integer"], 3);
    assert!((report["n_min_real"].as_f64().unwrap() - std::f64::consts::E).abs() <= 1e-6);
    assert!(stdout(&run(&["predict", "--ratio", "1e-9"])).contains("rel_eff"));
}

#[test]
fn predict_from_m_and_c_matches_ratio() {
    let a = json(&run(&["predict", "--m", "2e-9", "--c", "5.46e-7", "--json"]));
    let b = json(&run(&["predict", "--ratio", "273", "--json"]));
    assert_eq!(a["n_min_integer"], b["n_min_integer"]);
}

#[test]
fn predict_json_is_byte_identical() {
    let first = run(&["predict", "--ratio", "217", "--json"]).stdout;
    let second = run(&["predict", "--ratio", "217", "--json"]).stdout;
    assert_eq!(first, second);
}

#[test]
fn predict_rejects_non_positive_inputs() {
    assert_eq!(run(&["predict", "--ratio", "0"]).status.code(), Some(3));
    assert_eq!(run(&["predict", "--ratio", "-1"]).status.code(), Some(3));
    assert_eq!(run(&["predict", "--m", "0", "--c", "1"]).status.code(), Some(3));
}

#[test]
fn predict_curve_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve.csv");
    let out = run(&["predict", "--ratio", "273", "--curve", curve.to_str().unwrap(), "--n-max", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let body = fs::read_to_string(&curve).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("N,T_f,T_t"));
    let rows: Vec<(usize, f64)> = lines
        .map(|l| {
            let fields: Vec<&str> = l.split(',').collect();
            (fields[0].parse().unwrap(), fields[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 99);
    let best = rows.iter().min_by(|a, b| a.1.partial_cmp(&b.1).unwrap()).unwrap();
    assert_eq!(best.0, 81);

    let manifest = read_json(&dir.path().join("curve.manifest.json"));
    assert_eq!(manifest["command"], "predict");
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 1);
}

#[test]
fn calibrate_two_points_is_low_confidence() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = run(&[
        "calibrate", "--corpus", "1", "--n-values", "2,3", "--out", out_dir.to_str().unwrap(),
        "--synthetic-m", "2e-9", "--synthetic-c", "5e-7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("low-confidence"));

    let fit = read_json(&out_dir.join("fit.json"));
    assert_eq!(fit["low_confidence"], true);
    assert_eq!(fit["r_squared"], 1.0);

    let report = read_json(&out_dir.join("report.json"));
    let mut keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["R", "measured_ratio", "n_min_integer", "n_min_real", "r_squared", "rel_eff"]);

    let summary = stdout(&out);
    assert!(summary.contains("N_min") && summary.contains("RelEff"), "{summary}");
}

#[test]
fn calibrate_outputs_round_trip_and_are_listed_once() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = run(&[
        "calibrate", "--corpus", "2", "--n-values", "2,5,9,17,33,65", "--min-loops", "200",
        "--warmup", "10", "--out", out_dir.to_str().unwrap(), "--synthetic-m", "3e-9",
        "--synthetic-c", "4e-7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let samples = read_sweep_csv(fs::File::open(out_dir.join("sweep.csv")).unwrap()).unwrap();
    assert_eq!(samples.len(), 6);
    let refit = fit_linear(&samples).unwrap();
    let fit = read_json(&out_dir.join("fit.json"));
    assert_eq!(fit["m"].as_f64().unwrap(), refit.m);
    assert_eq!(fit["c"].as_f64().unwrap(), refit.c);
    assert_eq!(fit["r_squared"].as_f64().unwrap(), refit.r_squared);
    assert!((refit.m - 3e-9).abs() <= 1e-9 * 3e-9);

    let manifest = read_json(&out_dir.join("manifest.json"));
    let outputs: Vec<String> = manifest["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    for name in ["sweep.csv", "fit.json", "report.json", "curve.csv"] {
        let hits = outputs.iter().filter(|o| o.ends_with(name)).count();
        assert_eq!(hits, 1, "{name} in {outputs:?}");
        assert!(out_dir.join(name).exists());
    }
    assert!(manifest["host"].as_str().unwrap().contains(std::env::consts::OS));
}

#[test]
fn failed_fit_exits_four_and_keeps_partial_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = run(&[
        "calibrate", "--n-values", "4,4", "--out", out_dir.to_str().unwrap(),
        "--synthetic-m", "2e-9", "--synthetic-c", "5e-7",
    ]);
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
    let csv = fs::read_to_string(out_dir.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
    let manifest = read_json(&out_dir.join("manifest.json"));
    assert!(manifest["status"].as_str().unwrap().starts_with("failed"));
}

#[test]
fn appendix_reports_underflow_exponents() {
    let out = run(&["appendix", "--width", "1"]);
    let text = stdout(&out);
    assert!(text.contains("z (subnormal)      = 1075"), "{text}");
    assert!(text.contains("1024"));
    assert!(text.contains("first_index_below(eps = 2.220446049250313e-16) = 52"));
}

#[test]
fn appendix_first_index_example() {
    let out = run(&["appendix", "--width", "3", "--sections", "6", "--eps", "1e-10"]);
    assert!(stdout(&out).contains(") = 14"), "{}", stdout(&out));
}

#[test]
fn appendix_exit_code_follows_bound_checks() {
    let out = run(&["appendix", "--sections", "81"]);
    let text = stdout(&out);
    assert_eq!(text.matches("bounds ").count(), 6);
    let violated = text.contains("violated");
    assert_eq!(out.status.code(), Some(if violated { 5 } else { 0 }), "{text}");
}
