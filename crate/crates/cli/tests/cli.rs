use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn manifold(&self, name: &str, json: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, json).unwrap();
        path
    }

    fn zb1z2(&self) -> PathBuf {
        self.manifold("zb1z2.json", r#"{"n": 2, "A": [["0", "1"], ["0", "0"]]}"#)
    }
}

fn crsing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crsing")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn rank_of_rank_one_quadric() {
    let fx = Fixture::new();
    let m = fx.zb1z2();
    let out = crsing(&["rank", "--manifold", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "rank: 1\n");
}

#[test]
fn linear_counterexample_is_exit_one_with_certificate() {
    let fx = Fixture::new();
    let m = fx.zb1z2();
    let out = crsing(&["extend", "--manifold", m.to_str().unwrap(), "--f", "zb1", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["command"], "extend");
    assert_eq!(doc["result"]["reason"], "NoExtension");
    assert_eq!(doc["certificate"]["v"], serde_json::json!(["1", "0"]));
}

#[test]
fn extension_on_rank_two_quadric() {
    let fx = Fixture::new();
    let m = fx.manifold("sphere.json", r#"{"n": 2, "A": [["1", "0"], ["0", "1"]]}"#);
    let out = crsing(&["extend", "--manifold", m.to_str().unwrap(), "--f", "z1*zb1 + z2*zb2 + z1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["F"], "z1 + w");
    assert_eq!(doc["certificate"]["residual"], "0");
}

#[test]
fn formal_extension_on_cubic_perturbation() {
    let fx = Fixture::new();
    let m = fx.manifold("ehot.json", r#"{"n": 2, "A": [["0", "1"], ["0", "0"]], "E": "zb2^3"}"#);
    let f = "z1*zb1*z2 + z1*zb2^3";
    let out = crsing(&["formal-extend", "--manifold", m.to_str().unwrap(), "--f", f, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["F"], "z1*w");
    assert_eq!(doc["result"]["certified"], true);
    let rejected = crsing(&["formal-extend", "--manifold", m.to_str().unwrap(), "--f", "zb1"]);
    assert_eq!(rejected.status.code(), Some(1));
}

#[test]
fn classify_and_cr_image() {
    let fx = Fixture::new();
    let m = fx.manifold("case3.json", r#"{"n": 2, "A": [["2", "0"], ["0", "0"]], "B": [["3", "0"], ["0", "0"]]}"#);
    let out = crsing(&["classify", "--manifold", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("class: case 3 (a^2 = 9/4, a = 3/2)\n"));
    let img = crsing(&["cr-image", "--manifold", m.to_str().unwrap()]);
    assert!(stdout(&img).starts_with("form: 3"));
    let sphere = fx.manifold("sphere.json", r#"{"n": 2, "A": [["1", "0"], ["0", "1"]]}"#);
    let na = crsing(&["cr-image", "--manifold", sphere.to_str().unwrap()]);
    assert_eq!(na.status.code(), Some(1));
}

#[test]
fn check_cr_reports_defect() {
    let fx = Fixture::new();
    let m = fx.zb1z2();
    let ok = crsing(&["check-cr", "--manifold", m.to_str().unwrap(), "--f", "zb1"]);
    assert_eq!((ok.status.code(), stdout(&ok).as_str()), (Some(0), "cr: true\n"));
    let bad = crsing(&["check-cr", "--manifold", m.to_str().unwrap(), "--f", "zb2", "--json"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(json(&bad)["certificate"]["defects"]["L(1,2)"].is_string());
}

#[test]
fn matrix_dump_matches_reported_rank() {
    let fx = Fixture::new();
    let m = fx.zb1z2();
    let csv = fx.dir.path().join("x2.csv");
    let out = crsing(&[
        "cr-basis",
        "--manifold",
        m.to_str().unwrap(),
        "--degree",
        "2",
        "--dump-matrix",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split(',').count(), 11);
    assert_eq!(lines.count(), 10);
    assert!(stdout(&out).contains("dim CR^2: 6"));
}

#[test]
fn ode_decision() {
    let out = crsing(&["ode", "--case", "a", "--p", "4", "--s", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["verdict"], "nonconstant polynomial solution");
    assert_eq!(doc["certificate"]["brute_force_agrees"], true);
    assert_eq!(doc["certificate"]["witness_satisfies"], true);
}

#[test]
fn input_errors_exit_two() {
    let fx = Fixture::new();
    let m = fx.zb1z2();
    let bad_poly = crsing(&["extend", "--manifold", m.to_str().unwrap(), "--f", "z1 + * z2"]);
    assert_eq!(bad_poly.status.code(), Some(2));
    let missing = crsing(&["rank", "--manifold", "/nonexistent/m.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let asym = fx.manifold("asym.json", r#"{"n": 2, "B": [["0", "1"], ["0", "0"]]}"#);
    assert_eq!(crsing(&["rank", "--manifold", asym.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(crsing(&["verify", "--suite", "nope"]).status.code(), Some(2));
    let ode = crsing(&["ode", "--case", "a", "--p", "1"]);
    assert_eq!(ode.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "rank-formula", "--dmax", "4", "--samples", "3", "--json"];
    let a = crsing(&args);
    let b = crsing(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["result"]["passed"], true);
}
