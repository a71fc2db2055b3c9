use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn acq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acq")).args(args).output().expect("acq runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name);
    p.to_string_lossy().into_owned()
}

fn shipped(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../categories").join(name);
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_builtins() {
    for name in ["zn:5", "rep-s3-q"] {
        let out = acq(&["validate", name]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(report(&out)["passed"], true);
    }
}

#[test]
fn validate_rejects_bad_files() {
    let out = acq(&["validate", &data("reg-z2-f2.toml")]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    let ss = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "semisimplicity").unwrap();
    assert_eq!(ss["passed"], false);
    assert_eq!(acq(&["validate", &data("not-toml.cat")]).status.code(), Some(2));
    assert_eq!(acq(&["validate", "badfile.cat"]).status.code(), Some(2));
}

#[test]
fn eval_examples() {
    let out = acq(&["eval", "zn:4", "<x|x^2>", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["value"], "2");
    assert_eq!(r["agree"], true);
    assert_eq!(r["method"], "both");
    assert_eq!(report(&acq(&["eval", "rep-s3-q", "<x,y|xyx^-1y>"]))["value"], "3");
    assert_eq!(report(&acq(&["eval", "zn:3", "<x|x>"]))["value"], "1");
    let r = report(&acq(&["eval", "rep-s3-q", "<x,y,z,w | xyx^-1y^-1zwz^-1w^-1>"]));
    assert_eq!(r["value"], "9/4");
    let r = report(&acq(&["eval", &shipped("rep-s3-f5.toml"), "<x|x^2>", "--method", "state"]));
    assert_eq!(r["value"], "4 mod 5");
}

#[test]
fn eval_is_byte_identical_without_timing() {
    let a = acq(&["eval", "rep-s3-q", "<x,y|x^2y^-2x^-1y>", "--method", "both"]);
    let b = acq(&["eval", "rep-s3-q", "<x,y|x^2y^-2x^-1y>", "--method", "both", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(report(&a).get("elapsed_ms").is_none());
    let t = report(&acq(&["--timing", "eval", "zn:3", "<x|x>"]));
    assert!(t["elapsed_ms"].is_u64());
}

#[test]
fn exit_codes() {
    assert_eq!(acq(&["eval", "zn:3", "<x|q>"]).status.code(), Some(2));
    assert_eq!(acq(&["eval", "zn:3", "<x|x"]).status.code(), Some(2));
    assert_eq!(acq(&["eval", &data("reg-z2-f2.toml"), "<x|x>"]).status.code(), Some(3));
    assert_eq!(acq(&["eval", "rep-s3-q", "<x|x^30>"]).status.code(), Some(4));
    assert_eq!(acq(&["--max-carrier", "4", "eval", "rep-s3-q", "<x|x^2>"]).status.code(), Some(4));
    assert_eq!(acq(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(acq(&["probe", "zn:3", "no-such-probe"]).status.code(), Some(1));
    assert_eq!(acq(&["probe", "zn:3", "corollary"]).status.code(), Some(1));
}

#[test]
fn fuzz_is_clean_and_reproducible() {
    let args = ["fuzz", "zn:3", "<x,y|x^2y^-2x^-1y>", "--moves", "8", "--trials", "100", "--seed", "7"];
    let a = acq(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let r = report(&a);
    assert_eq!(r["discrepancies"].as_array().unwrap().len(), 0);
    assert_eq!(r["errors"].as_array().unwrap().len(), 0);
    assert_eq!(r["value"], "1");
    assert_eq!(acq(&args).stdout, a.stdout);
}

#[test]
fn fuzz_reports_guard_failures_with_their_moves() {
    // A tiny carrier limit makes some trials fail; each failure carries the
    // move list that produced it.
    let out = acq(&[
        "--max-carrier", "1024", "fuzz", "rep-s3-q", "<x,y | x^2, y^2>", "--method", "global", "--moves", "8",
        "--trials", "30", "--seed", "3",
    ]);
    let r = report(&out);
    let errors = r["errors"].as_array().unwrap();
    assert!(!errors.is_empty());
    assert_eq!(out.status.code(), Some(4));
    for e in errors {
        assert!(e["moves"].as_array().unwrap().iter().all(|m| m.is_string()));
        assert!(e["result"].as_str().unwrap().starts_with('<'));
    }
}

#[test]
fn probes() {
    let r = report(&acq(&["probe", "zn:4", "dimensions"]));
    assert_eq!(r["dims"][1][0][1], 1);
    assert_eq!(r["dims"][1][1][0], 1);
    assert_eq!(r["dims"][1][2][3], 1);
    assert_eq!(r["dims"][1][1][1], 0);
    let r = report(&acq(&["probe", "rep-s3-q", "conjecture1b"]));
    assert_eq!(r["simple_count"], 3);
    assert_eq!(r["values"][0]["value"], "3");
    let r = report(&acq(&["probe", "zn:2", "circulator-order", "--bound", "64"]));
    assert_eq!(r["orders"].as_array().unwrap().len(), 4);
    assert!(r["orders"].as_array().unwrap().iter().all(|o| o["order"].is_u64()));
    let r = report(&acq(&["probe", "rep-s3-q", "corollary", "--presentation", "<x | x^2>"]));
    assert_eq!(r["lhs"], "12");
    assert_eq!(r["rhs"], "18");
    assert_eq!(r["equal"], false);
    let r = report(&acq(&["probe", "rep-s3-q", "conjecture2", "--simple", "triv", "--k", "3"]));
    assert_eq!(r["entries"][0]["is_identity"], true);
    assert_eq!(r["entries"][1]["is_zero"], true);
}
