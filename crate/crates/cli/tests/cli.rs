use std::process::{Command, Output};

use serde_json::Value;

fn satake(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satake")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(satake(&["--help"]).status.code(), Some(0));
    assert_eq!(satake(&["--version"]).status.code(), Some(0));
}

#[test]
fn bad_usage_exits_one() {
    assert_eq!(satake(&["no-such-check"]).status.code(), Some(1));
    assert_eq!(satake(&["adjoint", "--samples", "0"]).status.code(), Some(1));
    assert_eq!(satake(&["moments", "--tol", "-1"]).status.code(), Some(1));
}

#[test]
fn kf_report_has_config_and_rows() {
    let out = satake(&["kf", "--lmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["version"], "1");
    assert_eq!(v["config"]["lmax"], 2);
    assert_eq!(v["results"].as_array().unwrap().len(), 9);
    assert_eq!(v["pass"], true);
}

#[test]
fn failed_check_exits_two() {
    // a zero-width band around the target cannot hold a sampled mean
    let out = satake(&["equidist", "--samples", "200", "--deg", "1", "--sigmas", "1e-9"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn csv_output_has_header() {
    let out = satake(&["--format", "csv", "moments", "--N", "2", "--deg", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "deviation,m,moment,p,pass,target");
    assert_eq!(lines.count(), 3);
}

#[test]
fn out_path_resolves_against_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_satake"))
        .env("SATAKE_OUT_DIR", dir.path())
        .args(["--out", "kf.json", "kf", "--lmax", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&std::fs::read(dir.path().join("kf.json")).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn adjoint_modes_agree_on_pass() {
    let float = json(&satake(&["adjoint", "--N", "2,3", "--order", "6", "--samples", "5"]));
    let exact = json(&satake(&["adjoint", "--N", "2,3", "--order", "6", "--samples", "5", "--exact"]));
    assert_eq!(float["pass"], true);
    assert_eq!(exact["pass"], true);
    for row in exact["results"].as_array().unwrap() {
        assert_eq!(row["mismatches"], 0);
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["equidist", "--samples", "2000", "--deg", "2"];
    let a = satake(&args).stdout;
    let mut t = vec!["--threads", "3"];
    t.extend_from_slice(&args);
    assert_eq!(a, satake(&t).stdout);
}

#[test]
fn delta_reports_growth() {
    let v = json(&satake(&["delta", "--T", "8,16"]));
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(v["pass"], true);
}
