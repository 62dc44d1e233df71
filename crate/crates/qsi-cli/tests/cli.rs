//! End-to-end checks of the binary: exit codes, format stability, and
//! byte-identical output across repeated runs.

use std::process::{Command, Output};

fn qsi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsi")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qsi(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn soundness_csv_is_exact() {
    let text = stdout(&["soundness", "--mu", "3,1", "--p", "1/2", "--format", "csv"]);
    assert_eq!(text, "n,d,mu,p,completeness,soundness,avg\n4,2,\"3,1\",1/2,1/1,3/4,7/8\n");
}

#[test]
fn soundness_rejects_conflicting_selectors() {
    let out = qsi(&["soundness", "--mu", "3,1", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qsi(&["soundness"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ist_worked_example() {
    let text = stdout(&["ist", "--word", "1,0,0,0,1,0,1,1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["clicks_lower_bound"], 5);
    assert_eq!(doc["n"], 8);
}

#[test]
fn ist_pair_mode_reports_exact_and_bound() {
    let text = stdout(&["ist", "--n", "8", "--h", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["bound"], "25/28");
    assert_eq!(doc["exact"], "25/28");
    assert_eq!(doc["wreath_trace"], "25/28");
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = qsi(&["ist", "--n", "16", "--h", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("65536"), "budget message names the offending dimension: {err}");
}

#[test]
fn verify_failure_exits_one_and_names_the_cell() {
    // an artificially tiny dimension budget starves the trace path
    let out = qsi(&["verify", "wreath", "--dim-budget", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("verification failed at"), "stderr: {err}");
}

#[test]
fn verify_gamma_passes_and_is_deterministic() {
    let a = stdout(&["verify", "gamma", "--format", "json"]);
    let b = stdout(&["verify", "gamma", "--format", "json"]);
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["passed"], true);
}

#[test]
fn region_and_compare_swap_tables() {
    let region = stdout(&["region", "--mu", "3,1", "--samples", "4", "--format", "csv"]);
    let mut lines = region.lines();
    assert_eq!(lines.next(), Some("alpha,beta_low,beta_high"));
    assert_eq!(lines.next(), Some("0/1,1/4,1/1"));
    assert!(region.lines().last().unwrap().starts_with("1/1,0/1,3/4"));

    let cmp = stdout(&["compare-swap", "--n-max", "2", "--format", "csv"]);
    assert_eq!(cmp, "pairs,p_swap,p_perm\n1,3/4,3/4\n2,7/8,11/12\n");
}

#[test]
fn gtest_json_shape() {
    let text = stdout(&[
        "gtest", "--group", "cyclic", "--mu", "2,2", "--d", "2", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["soundness"], "2/3");
    assert_eq!(doc["trace_agrees"], true);
    assert_eq!(doc["spec"], serde_json::json!({ "cyclic": 4 }));
}

#[test]
fn gtest_accepts_tagged_json_groups() {
    let text = stdout(&[
        "gtest",
        "--group",
        r#"{"generators":[[2,1,3,4],[1,2,4,3]]}"#,
        "--mu",
        "2,2",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    // the group generated by the two disjoint swaps has four elements and
    // trivial multiplicity 1 on each of the three d = 2 shapes
    assert_eq!(doc["soundness"], "1/2");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("qsi-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.csv");
    let _ = stdout(&[
        "compare-swap", "--n-max", "1", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    let content = std::fs::read_to_string(&path).unwrap();
    assert_eq!(content, "pairs,p_swap,p_perm\n1,3/4,3/4\n");
    std::fs::remove_file(path).ok();
}
