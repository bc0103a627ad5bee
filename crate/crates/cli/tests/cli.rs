use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_blockforge"));
    for var in ["SUBSPACES", "POINTS", "CLIQUES", "SUBSETS", "SEARCH"] {
        c.env_remove(format!("BLOCKFORGE_BUDGET_{var}"));
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn blockforge")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn blockforge");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).expect("json report")
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

/// K4 graph and a 3 x 4 MDS supply over GF(7) in `dir`.
fn k4_inputs(dir: &Path) {
    assert!(run(&["graph", "complete", "--n", "4", "--out", &p(dir, "k4.g")]).status.success());
    assert!(run(&["supply", "--field", "7", "--k", "3", "--n", "4", "--out", &p(dir, "mds.pts")]).status.success());
}

#[test]
fn construct_then_verify_pipeline_passes() {
    let dir = tempfile::tempdir().unwrap();
    k4_inputs(dir.path());
    let built = run(&["construct", "--recipe", "cherry", "--graph", &p(dir.path(), "k4.g"), "--supply", &p(dir.path(), "mds.pts"), "--s", "2"]);
    assert!(built.status.success());
    let out = run_stdin(&["verify", "--s", "2"], &built.stdout);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out.stdout);
    assert_eq!(r["passed"], Value::Bool(true));
    assert_eq!(r["result"]["result"], "pass");
}

#[test]
fn lps_pipeline_is_ramanujan() {
    let g = run(&["graph", "lps", "--p", "5", "--q", "13"]);
    assert!(g.status.success());
    let out = run_stdin(&["spectra"], &g.stdout);
    assert!(out.status.success());
    let r = json(&out.stdout);
    let lambda = r["result"]["lambda_bound"].as_f64().unwrap();
    assert!(lambda <= 2.0 * 5f64.sqrt() + 1e-6, "lambda = {lambda}");
}

#[test]
fn failing_set_exits_one_with_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let set = p(dir.path(), "basis.pts");
    std::fs::write(&set, "field 7 1 0 1\ndims 3 3\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
    let out = run(&["verify", "--set", &set, "--s", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out.stdout);
    assert_eq!(r["result"]["result"], "fail");
    assert!(r["result"]["counterexample"].is_object());
}

#[test]
fn budget_violation_exits_two_and_names_budget() {
    let dir = tempfile::tempdir().unwrap();
    k4_inputs(dir.path());
    let set = p(dir.path(), "b.pts");
    assert!(run(&["construct", "--recipe", "cherry", "--graph", &p(dir.path(), "k4.g"), "--supply", &p(dir.path(), "mds.pts"), "--out", &set])
        .status
        .success());
    let out = bin().args(["verify", "--set", &set, "--s", "2"]).env("BLOCKFORGE_BUDGET_SUBSPACES", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("subspaces budget"));
}

#[test]
fn argument_errors_exit_two() {
    assert_eq!(run(&["verify", "--s"]).status.code(), Some(2));
    assert_eq!(run(&["supply", "--field", "6", "--k", "2", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--set", "/nonexistent/x.pts", "--s", "1"]).status.code(), Some(2));
    let bad_env = bin().args(["graph", "complete", "--n", "3"]).env("BLOCKFORGE_BUDGET_POINTS", "0").output().unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    k4_inputs(dir.path());
    let set = p(dir.path(), "b.pts");
    run(&["construct", "--recipe", "cherry", "--graph", &p(dir.path(), "k4.g"), "--supply", &p(dir.path(), "mds.pts"), "--out", &set]);
    let a = run(&["verify", "--set", &set, "--s", "2"]);
    let b = run(&["verify", "--set", &set, "--s", "2"]);
    let c = run(&["--jobs", "4", "verify", "--set", &set, "--s", "2"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let r1 = run(&["--seed", "9", "supply", "--field", "11", "--k", "3", "--n", "6", "--mode", "random", "--s", "2", "--t", "4"]);
    let r2 = run(&["--seed", "9", "supply", "--field", "11", "--k", "3", "--n", "6", "--mode", "random", "--s", "2", "--t", "4"]);
    assert!(r1.status.success());
    assert_eq!(r1.stdout, r2.stdout);
    assert_eq!(r1.stderr, r2.stderr);
}

#[test]
fn convert_round_trips_and_mincheck_agrees() {
    let dir = tempfile::tempdir().unwrap();
    k4_inputs(dir.path());
    let set = p(dir.path(), "b.pts");
    let code = p(dir.path(), "b.gen");
    run(&["construct", "--recipe", "cherry", "--graph", &p(dir.path(), "k4.g"), "--supply", &p(dir.path(), "mds.pts"), "--out", &set]);
    assert!(run(&["convert", "--set", &set, "--out", &code]).status.success());
    let m = run(&["mincheck", "--code", &code, "--s", "2"]);
    assert_eq!(m.status.code(), Some(0));
    let back = run(&["convert", "--code", &code]);
    assert!(back.status.success());
    let original = std::fs::read(&set).unwrap();
    assert_eq!(back.stdout, original);
}

#[test]
fn oracle_finds_plane_optimum() {
    let out = run(&["oracle", "--field", "2", "--k", "3", "--s", "1"]);
    assert!(out.status.success());
    let r = json(&out.stdout);
    assert_eq!(r["result"]["size"], 6);
    assert_eq!(r["result"]["exact"], true);
}

#[test]
fn graph_operators_compose() {
    let dir = tempfile::tempdir().unwrap();
    let c = p(dir.path(), "c.g");
    std::fs::write(&c, run(&["graph", "complete", "--n", "3"]).stdout).unwrap();
    let blown = run(&["graph", "blowup", "--graph", &c, "--d", "2"]);
    assert!(blown.status.success());
    let r = json(&blown.stderr);
    assert_eq!(r["result"]["n"], 6);
    assert_eq!(r["result"]["regular_degree"], 5);
    let powered = run_stdin(&["graph", "power", "--graph", "-", "--u", "2"], &run(&["graph", "from-file", "--file", &c]).stdout);
    assert_eq!(json(&powered.stderr)["result"]["edges"], 3);
}

#[test]
fn text_format_renders_same_report() {
    let out = run(&["--format", "text", "oracle", "--field", "2", "--k", "3", "--s", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("command: oracle"));
    assert!(text.contains("size: 6"));
}
