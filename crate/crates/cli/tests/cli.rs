use std::path::PathBuf;
use std::process::{Command, Output};

use bpba_cli::RunReport;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn bpba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpba")).args(args).env("BPBA_THREADS", "2").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch_spec(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("bpba-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn validate_accepts_bundled_fixtures() {
    for name in ["figure1", "init8", "bounce"] {
        let out = bpba(&["validate", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(stdout(&out).trim(), "ok");
    }
}

#[test]
fn validate_lists_violations() {
    let dup = scratch_spec(
        "dup",
        r#"{"n":2,"lines":[{"start":4,"end":3,"reflected":false,"rapidity":"1/3"},
                           {"start":3,"end":1,"reflected":false,"rapidity":"2/7"}],"q":"7/5"}"#,
    );
    let out = bpba(&["validate", "--json", dup.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ok"], false);
    assert!(v["violations"].as_array().unwrap().iter().any(|x| x["kind"] == "perimeter"));

    let generic = scratch_spec("generic", r#"{"n":1,"lines":[{"start":2,"end":1,"reflected":true,"rapidity":"1"}],"q":"1"}"#);
    let out = bpba(&["validate", generic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("Genericity"));
}

#[test]
fn unreadable_or_malformed_input_is_exit_2() {
    assert_eq!(bpba(&["validate", "/nonexistent/spec.json"]).status.code(), Some(2));
    let bad = scratch_spec("bad", "{not json");
    assert_eq!(bpba(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(bpba(&["compute", &fixture("bounce"), "--alpha", "3", "--beta", "1"]).status.code(), Some(2));
    assert_eq!(bpba(&["compute", &fixture("bounce"), "--alpha", "21", "--beta", "11"]).status.code(), Some(2));
    assert_eq!(bpba(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn compute_boundary_line() {
    let out = bpba(&["compute", &fixture("bounce"), "--alpha", "2", "--beta", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: RunReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.agreement);
    assert_eq!(report.results.len(), 1);
    for v in report.results[0].values.values() {
        assert_eq!(v.to_string(), "5/7");
    }
}

#[test]
fn compute_reference_is_one() {
    for method in ["direct", "aba", "cba"] {
        let out = bpba(&["compute", &fixture("figure1"), "--method", method, "--alpha", "1111", "--beta", "1111", "--json"]);
        let report: RunReport = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report.results[0].values[method].to_string(), "1");
    }
}

#[test]
fn compute_all_configs_agree_and_round_trip() {
    let out = bpba(&["compute", &fixture("figure1"), "--all-configs", "--invariance-points", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let report: RunReport = serde_json::from_str(&text).unwrap();
    assert!(report.agreement);
    assert_eq!(report.results.len(), 256);
    assert!(report.results.iter().filter(|r| !r.ice_valid).all(|r| r.values.values().all(|v| v.to_string() == "0")));
    assert_eq!(report.identities.len(), 3);
    assert!(report.identities.iter().all(|o| o.passed));
    let again: RunReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again, report);
    assert_eq!(report.spec_digest.len(), 64);
}

#[test]
fn verify_reports_every_suite() {
    let out = bpba(&["verify", "--suite", "all", "--draws", "2", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    for suite in ["weights", "fcr", "baxter", "invariance", "reduction"] {
        assert!(text.contains(&format!("{suite}: ")), "{text}");
    }
}

#[test]
fn verify_invariance_on_fixtures() {
    let out = bpba(&["verify", "--suite", "invariance", "--draws", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["outcomes"].as_array().unwrap().iter().all(|o| o["passed"] == true));
}

#[test]
fn bench_rows_and_guard() {
    let out = bpba(&["bench", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);
    let out = bpba(&["bench", "--nmax", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nmax"));
}
