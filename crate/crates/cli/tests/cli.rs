use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn psca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psca")).args(args).output().unwrap()
}

fn psca_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_psca"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn piped_construct_then_verify() {
    let built = psca(&["construct", "--catalog", "psca_5_4_l1"]);
    assert!(built.status.success());
    let v = psca_stdin(&["verify", "--k", "4", "--lambda", "1"], &built.stdout);
    assert_eq!(v.status.code(), Some(0));
    let v = psca_stdin(&["verify", "--k", "4", "--lambda", "2"], &built.stdout);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn failing_certificate_lists_uncovered() {
    let built = psca(&["construct", "--catalog", "prop1_X"]);
    let v = psca_stdin(&["--format", "json-like", "verify", "--covering"], &built.stdout);
    assert_eq!(v.status.code(), Some(1));
    let cert = json(&v);
    assert_eq!(cert["verdict"], "fail");
    let bad: Vec<&str> = cert["failures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["sequence"].as_str().unwrap())
        .collect();
    assert_eq!(bad, ["132", "154", "231", "451"]);
}

#[test]
fn round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r2.txt");
    let p = path.to_str().unwrap();
    assert!(psca(&["construct", "--target", "psca3", "--r", "2", "-o", p])
        .status
        .success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("psca n=9 k=3\n"));
    assert_eq!(text.lines().count(), 49);
    let v = psca(&["--format", "json-like", "verify", "--input", p]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json(&v)["claim"]["lambda"], 8);
    let r = psca(&["--format", "json-like", "rank", "--input", p, "--t", "2"]);
    assert!(r.status.success());
    let r = json(&r);
    assert_eq!(r["rows"], 72);
    assert!(r["rank"].as_u64().unwrap() <= 48);
}

#[test]
fn bound_reports_lower_two() {
    let out = psca(&["--format", "json-like", "bound", "--n", "10", "--k", "4"]);
    assert!(out.status.success());
    let b = json(&out);
    assert_eq!(b["lower"]["value"], "2");
    let traces = b["lower"]["trace"].as_array().unwrap();
    assert!(traces.iter().any(|t| t.as_str().unwrap().starts_with("* 2")));
}

#[test]
fn maxcov_search() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let out = psca(&[
        "--format",
        "json-like",
        "search",
        "--mode",
        "maxcov",
        "--n",
        "5",
        "--k",
        "3",
        "--m",
        "6",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = json(&out);
    assert_eq!(s["best_value"], 56);
    assert_eq!(s["witness"].as_array().unwrap().len(), 6);
    let w = psca(&["verify", "--input", path.to_str().unwrap(), "--covering"]);
    assert_eq!(w.status.code(), Some(1));
}

#[test]
fn search_without_witness_exits_one() {
    let out = psca(&["search", "--mode", "lambda1", "--n", "5", "--k", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("status: exhausted"));
}

#[test]
fn plane_dump() {
    let out = psca(&["plane", "--canned"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().all(|l| l.starts_with("class=")));
    let out = psca(&["plane", "--q", "4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 20);
    assert_eq!(psca(&["plane", "--q", "6"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(psca(&[]).status.code(), Some(2));
    assert_eq!(psca(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(psca(&["construct", "--catalog", "nope"]).status.code(), Some(2));
    let bad = psca_stdin(&["verify"], b"psca n=3 k=2\n1 2 2\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
}

#[test]
fn thread_count_does_not_change_output() {
    let built = psca(&["construct", "--target", "psca3", "--r", "2"]);
    let one = psca_stdin(&["--threads", "1", "verify", "--k", "2"], &built.stdout);
    let four = psca_stdin(&["--threads", "4", "verify", "--k", "2"], &built.stdout);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), Some(0));
}
