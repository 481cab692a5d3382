//! End-to-end tests of the binary: subcommand surface, exit codes, and the
//! determinism contract (byte-identical output for identical inputs).

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skeincalc"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("skeincalc-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn parse_reports_structure() {
    let pd = write_temp("hopf.pd", "X[1,3,2,4], X[3,1,4,2]");
    let v = stdout_json(&run(&["parse", "--pd", pd.to_str().unwrap()]));
    assert_eq!(v["components"], 2);
    assert_eq!(v["writhe"], 2);
    assert_eq!(v["arcs"], 4);
    assert_eq!(v["valid"], true);
}

#[test]
fn parse_native_json_with_unknots() {
    let f = write_temp("circles.json", r#"{"crossings":[],"unknots":3}"#);
    let v = stdout_json(&run(&["parse", "--pd", f.to_str().unwrap()]));
    assert_eq!(v["components"], 3);
    assert_eq!(v["crossings"], 0);
}

#[test]
fn bracket_of_hopf() {
    let pd = write_temp("hopf2.pd", "X[1,3,2,4], X[3,1,4,2]");
    let v = stdout_json(&run(&["bracket", "--pd", pd.to_str().unwrap()]));
    assert_eq!(
        v,
        serde_json::json!({"var": "q", "terms": [[-6, "1"], [-2, "1"], [2, "1"], [6, "1"]]})
    );
}

#[test]
fn jones_normalizes_kinks_away() {
    let kink = write_temp("kink.pd", "X[1,2,2,1]");
    let v = stdout_json(&run(&["jones", "--pd", kink.to_str().unwrap()]));
    // unknot value: -q^2 - q^-2
    assert_eq!(
        v,
        serde_json::json!({"var": "q", "terms": [[-2, "-1"], [2, "-1"]]})
    );
}

#[test]
fn expect_beta_zero_counts_components() {
    let pd = write_temp("hopf3.pd", "X[1,3,2,4], X[3,1,4,2]");
    let v = stdout_json(&run(&[
        "expect", "--group", "su2", "--beta", "0", "--pd", pd.to_str().unwrap(),
    ]));
    assert_eq!(v["value_re"], 4.0);
    assert_eq!(v["states"], 4);
    assert_eq!(v["components"], 2);
}

#[test]
fn expect_accepts_lambda() {
    let pd = write_temp("hopf4.pd", "X[1,3,2,4], X[3,1,4,2]");
    let v = stdout_json(&run(&[
        "expect", "--group", "u1", "--lambda", "1", "--pd", pd.to_str().unwrap(),
    ]));
    let got = v["value_re"].as_f64().unwrap();
    assert!((got - 2.0f64.exp()).abs() < 1e-9);
}

#[test]
fn linking_matrix_of_hopf() {
    let pd = write_temp("hopf5.pd", "X[1,3,2,4], X[3,1,4,2]");
    let v = stdout_json(&run(&["linking", "--pd", pd.to_str().unwrap()]));
    assert_eq!(v["matrix"], serde_json::json!([[0, 1], [1, 0]]));
    assert_eq!(v["writhe"], 2);
}

#[test]
fn homfly_polynomial_and_numeric() {
    let pd = write_temp("tref.pd", "X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]");
    let poly = stdout_json(&run(&["homfly", "--pd", pd.to_str().unwrap()]));
    assert_eq!(poly["vars"], serde_json::json!(["q", "z"]));
    let numeric = stdout_json(&run(&[
        "homfly", "--pd", pd.to_str().unwrap(), "--n", "2", "--beta", "0.2",
    ]));
    assert!(numeric["value_re"].as_f64().unwrap().is_finite());
}

#[test]
fn coeffs_emits_scalars() {
    let v = stdout_json(&run(&["coeffs", "--beta", "0", "--n", "2"]));
    assert_eq!(v["a"], serde_json::json!([-1.0, 0.0]));
    assert_eq!(v["q"], serde_json::json!([-1.0, 0.0]));
    assert_eq!(v["delta"], serde_json::json!([-2.0, 0.0]));
    assert_eq!(v["delta_n"], 3.0);
}

#[test]
fn goldman_torus_and_curves() {
    let v = stdout_json(&run(&["goldman", "--torus", "1,0", "2,1"]));
    assert_eq!(v["bracket"], serde_json::json!([{"word": {"p": 3, "q": 1}, "coeff": "1"}]));

    let curves = write_temp(
        "curves.json",
        r#"{"c":["a"],"c_prime":["b"],"intersections":[{"id":1,"pos_c":0,"pos_c_prime":0,"sign":1}]}"#,
    );
    let gl = stdout_json(&run(&["goldman", "--gl", "--curves", curves.to_str().unwrap()]));
    assert_eq!(gl["bracket"], serde_json::json!([{"word": ["a", "b"], "coeff": "1"}]));
    let su2 = stdout_json(&run(&["goldman", "--su2", "--curves", curves.to_str().unwrap()]));
    assert_eq!(
        su2["bracket"],
        serde_json::json!([
            {"word": ["a", "b"], "coeff": "1/2"},
            {"word": ["a", "~b"], "coeff": "-1/2"}
        ])
    );
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    for suite in ["reidemeister", "skein", "cross-group", "goldman"] {
        let a = run(&["verify", "--suite", suite, "--seed", "7", "--count", "6"]);
        assert!(a.status.success(), "suite {suite}");
        let b = run(&["verify", "--suite", suite, "--seed", "7", "--count", "6"]);
        assert_eq!(a.stdout, b.stdout, "suite {suite} output must be byte-identical");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn determinism_across_subcommands() {
    let pd = write_temp("det.pd", "X[2,5,4,1], X[5,3,7,6], X[6,9,1,4], X[9,7,3,2]");
    let path = pd.to_str().unwrap();
    for args in [
        vec!["bracket", "--pd", path],
        vec!["expect", "--group", "gl", "--n", "3", "--beta", "0.17,0.05", "--pd", path],
        vec!["homfly", "--pd", path],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
    }
}

#[test]
fn exit_codes() {
    // io error
    let out = run(&["bracket", "--pd", "/nonexistent/nothing.pd"]);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "io");

    // input validation error
    let bad = write_temp("bad.pd", "X[1,3,2,3], X[3,1,4,2]");
    let out = run(&["bracket", "--pd", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "input");

    // unknown suite
    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn crossing_cap_env_override() {
    let pd = write_temp("six.pd", "X[1,3,2,4],X[3,5,4,6],X[5,7,6,8],X[7,9,8,10],X[9,11,10,12],X[11,1,12,2]");
    let out = bin()
        .args(["expect", "--group", "su2", "--beta", "0.1", "--pd", pd.to_str().unwrap()])
        .env("SKEIN_MAX_CROSSINGS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("cap"));
}

#[test]
fn pretty_renders_table() {
    let out = run(&["coeffs", "--beta", "0", "--pretty"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() > 3);
}
