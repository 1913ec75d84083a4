use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bspid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bspid")).args(args).env_remove("BSPID_WINDOW").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).expect("one JSON object per line")).collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("bspid-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp dir is writable");
    path
}

#[test]
fn bfun_prints_the_polynomial() {
    let out = bspid(&["bfun", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "s^2 + 3/2*s + 1/2\n");

    let out = bspid(&["--output", "json", "bfun", "--n", "1", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["bfunction"], "s^2 + 2*s + 1");
    assert_eq!(v["roots"], serde_json::json!(["-1", "-1"]));
    assert_eq!(v["stable"], true);
}

#[test]
fn gbf_and_vmem() {
    let out = bspid(&["gbf", "--f", "x", "--expr", "x*dt^2 @ fs"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "s + 1\n");

    let out = bspid(&["vmem", "--alpha", "1", "--f", "x", "--expr", "fs"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "true\n");
    let out = bspid(&["vmem", "--alpha", "2", "--f", "x", "--expr", "fs"]);
    assert_eq!(stdout(&out), "false\n");
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["gbf", "--f", "x", "--expr", "dz @ fs"][..],
        &["gbf", "--f", "q", "--expr", "fs"],
        &["gbf", "--f", "x", "--expr", "fs + t @ fs"],
        &["vmem", "--alpha", "half", "--f", "x", "--expr", "fs"],
        &["snf", "/nonexistent/matrix.json"],
    ] {
        let out = bspid(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn empty_runs_report_no_checks() {
    for args in [&["maxid", "--trials", "0"][..], &["ts-verify", "--trials", "0"], &["ts-theorem", "--nmax", "0"]] {
        let out = bspid(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(stdout(&out), "no checks executed\n", "{args:?}");
    }
}

#[test]
fn window_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bspid"))
        .args(["bfun", "--n", "1"])
        .env("BSPID_WINDOW", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bspid(&["--window", "2", "bfun", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bspid(&["--window", "6", "bfun", "--n", "1"]);
    assert_eq!(stdout(&out), "s + 1\n");
}

#[test]
fn snf_and_ann_read_files() {
    let m = temp_file("m.json", r#"{"ring":"ZZ","rows":2,"cols":2,"entries":[["2","4"],["6","8"]]}"#);
    let out = bspid(&["--output", "json", "snf", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["rank"], 2);
    assert_eq!(v["d"], serde_json::json!(["2", "4"]));

    let module = temp_file(
        "ann.json",
        r#"{"relations":{"ring":"QS:s","rows":2,"cols":2,"entries":[["s","0"],["0","s + 1"]]},"element":["1","1"]}"#,
    );
    let out = bspid(&["ann", module.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "s^2 + s\n");

    let bad = temp_file("bad.json", r#"{"ring":"ZZ","rows":1,"cols":1,"entries":[["1/2"]]}"#);
    assert_eq!(bspid(&["snf", bad.to_str().unwrap()]).status.code(), Some(2));
    for p in [m, module, bad] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn ts_verify_trials_replay_and_files() {
    let out = bspid(&["--output", "json", "ts-verify", "--mode", "ideal", "--trials", "5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let all = json_lines(&out);
    assert_eq!(all.len(), 5);
    for field in ["trial", "seed", "mode", "b", "l", "bruteforce", "snf", "pass"] {
        assert!(all[0].get(field).is_some(), "{field}");
    }

    let out = bspid(&["--output", "json", "ts-verify", "--mode", "ideal", "--seed", "3", "--trial", "4"]);
    assert_eq!(json_lines(&out), vec![all[4].clone()]);

    let inst = temp_file(
        "inst.json",
        r#"{"mode":"ideal","factors":[{"a":["s1 + 1"],"c":["1"]},{"a":["s2^2","s2 + 1"],"c":["s2","1"]}]}"#,
    );
    let out = bspid(&["ts-verify", "--input", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("pass\n"));
    let _ = std::fs::remove_file(inst);
}

#[test]
fn maxid_text_summary() {
    let out = bspid(&["maxid", "--trials", "50", "--exhaustive-len", "1", "--exhaustive-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "50/50 pass");
    assert!(lines[1].starts_with("exhaustive ") && lines[1].ends_with(" pass"));
}

#[test]
fn reports_are_identical_with_and_without_threads() {
    let a = bspid(&["--output", "json", "ts-theorem", "--nmax", "2", "--mmax", "2"]);
    let b = bspid(&["--sequential", "--output", "json", "ts-theorem", "--nmax", "2", "--mmax", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_lines(&a).len(), 8);
}
