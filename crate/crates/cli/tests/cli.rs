use std::process::Command;

use ballspec_cli::selfcheck::{self, default_kernel};
use ballspec_cli::{run, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};

const BIN: &str = env!("CARGO_BIN_EXE_ballspec");

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ballspec").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn neumann_disc_example_has_nine_labels() {
    let (code, out, _) = cli(&["spectrum", "--d", "2", "--bc", "neumann", "--lambda-max", "18", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.last().unwrap()["label_last"], 8);
    let (_, out, _) = cli(&["spectrum", "--d", "2", "--bc", "neumann", "--lambda-max", "28.3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["records"].as_array().unwrap().last().unwrap()["label_last"], 10);
}

#[test]
fn pleijel_csv_example_has_twenty_rows() {
    let (code, out, _) = cli(&["pleijel", "--table", "2", "21", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "d,gamma,quotient");
    assert_eq!(lines.len(), 21);
    let g2: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(format!("{g2:.6}"), "0.691660");
    assert!(lines[20].ends_with(','));
}

#[test]
fn courant_ball_example_is_sharp_at_one_and_two() {
    let (code, out, _) = cli(&["courant", "--d", "3", "--bc", "dirichlet"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let sharp: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "Sharp")
        .map(|r| r["label_first"].as_u64().unwrap())
        .collect();
    assert_eq!(sharp, [1, 2]);
}

#[test]
fn zeros_formats() {
    let (code, out, _) = cli(&["zeros", "--kind", "bessel", "--nu", "1/2", "--count", "3", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let zs: Vec<f64> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    for (m, z) in zs.iter().enumerate() {
        assert!((z - (m + 1) as f64 * std::f64::consts::PI).abs() < 1e-12);
    }
    let (code, out, _) = cli(&["zeros", "--kind", "neumann", "--l", "0", "--d", "3", "--count", "2"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["zeros"][0], 0.0);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec![],
        vec!["spectrum", "--d", "1", "--bc", "neumann", "--lambda-max", "10"],
        vec!["spectrum", "--d", "2", "--bc", "robin", "--lambda-max", "10"],
        vec!["spectrum", "--d", "2", "--bc", "neumann", "--lambda-max", "-1"],
        vec!["spectrum", "--d", "2", "--bc", "neumann", "--lambda-max", "nan"],
        vec!["zeros", "--kind", "bessel"],
        vec!["zeros", "--kind", "bessel", "--nu", "1/3"],
        vec!["zeros", "--kind", "bessel", "--nu", "2", "--l", "1"],
        vec!["zeros", "--kind", "dirichlet", "--l", "1"],
        vec!["zeros", "--kind", "bessel", "--nu", "0", "--tol", "0"],
        vec!["zeros", "--kind", "bessel", "--nu", "121"],
        vec!["pleijel"],
        vec!["pleijel", "--table", "2", "21", "--bound", "3"],
        vec!["pleijel", "--table", "21", "2"],
        vec!["pleijel", "--bound", "2"],
        vec!["certify", "--d-min", "2"],
        vec!["frobnicate"],
        vec!["spectrum", "--d", "2", "--bc", "neumann", "--lambda-max", "10", "extra"],
    ] {
        let (code, out, err) = cli(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {out}{err}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("selfcheck"));
    let (code, out, _) = cli(&["--version"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("ballspec "));
}

#[test]
fn output_is_deterministic_and_version_free() {
    let args = ["spectrum", "--d", "3", "--bc", "dirichlet", "--lambda-max", "150", "--format", "json"];
    let (_, a, err) = cli(&args);
    let (_, b, _) = cli(&args);
    assert_eq!(a, b);
    assert!(err.is_empty());
    assert!(!a.contains(env!("CARGO_PKG_VERSION")));
    let mut verbose = args.to_vec();
    verbose.push("--verbose");
    let (_, c, err) = cli(&verbose);
    assert_eq!(a, c);
    assert!(err.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["courant", "--d", "4", "--bc", "neumann"];
    let outputs: Vec<Vec<u8>> = ["1", "3", "0"]
        .iter()
        .map(|n| {
            let o = Command::new(BIN).args(args).env("BALLSPEC_THREADS", n).output().unwrap();
            assert!(o.status.success());
            o.stdout
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let o = Command::new(BIN).args(args).env("BALLSPEC_THREADS", "many").output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let p = path.to_str().unwrap();
    let (code, out, _) = cli(&["spectrum", "--d", "2", "--bc", "dirichlet", "--lambda-max", "50", "--format", "csv", "--output", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let (_, direct, _) = cli(&["spectrum", "--d", "2", "--bc", "dirichlet", "--lambda-max", "50", "--format", "csv"]);
    assert_eq!(text, direct);
    let table = ballspec::SpectrumTable::from_csv(&text).unwrap();
    assert_eq!(table.records[0].label_first, 1);
    let missing = dir.path().join("no/such/dir/x.json");
    let (code, _, err) = cli(&["pleijel", "--bound", "3", "--output", missing.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn binary_exit_codes() {
    let ok = Command::new(BIN).args(["pleijel", "--bound", "4", "--format", "json"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(BIN).args(["spectrum", "--d", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(bad.stdout.is_empty());
}

#[test]
fn selfcheck_fast_passes() {
    let (code, out, _) = cli(&["selfcheck", "--fast"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn biased_kernel_fails_the_recurrence_check() {
    let biased = |nu, x| default_kernel(nu, x).map(|v| v + 1e-6);
    let mut out = Vec::new();
    let code = selfcheck::run(true, &biased, &mut out);
    let out = String::from_utf8(out).unwrap();
    assert_eq!(code, EXIT_NUMERICAL);
    assert!(out.lines().next().unwrap().starts_with("FAIL recurrence_residual"), "{out}");
    assert!(out.contains("first failure: recurrence_residual"));
}
