//! The `swq` binary: output encodings and exit codes.

use std::process::{Command, Output};

fn swq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swq"))
        .args(args)
        .output()
        .expect("swq runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_value_and_exits_zero() {
    let out = swq(&["eval", "--fn", "sw", "--n", "50", "--q", "0.5", "--u", "1", "--t", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("value"));
}

#[test]
fn eval_json_has_named_sections() {
    let out = swq(&[
        "eval", "--fn", "inner", "--n", "50", "--q", "0.5", "--u", "1,1", "--t", "0.5", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["fn"], "inner");
    assert_eq!(v["inputs"]["u"], "1,1");
    assert!(v["outputs"].is_object());
}

#[test]
fn table1_json_schema() {
    let out = swq(&[
        "table1", "--n-list", "20", "--q-list", "0.5", "--u-list", "1;-1,2", "--t-list", "0,2.5", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 4);
    for key in [
        "inputs",
        "true",
        "approx",
        "bound",
        "rel_err",
        "modulus_rel_err",
        "region",
    ] {
        assert!(rows[0].get(key).is_some(), "missing {key}");
    }
    assert_eq!(rows[1]["region"], "OUTER");
    assert_eq!(rows[2]["inputs"]["u"], "-1,2");
}

#[test]
fn table2_csv_has_header_and_rows() {
    let out = swq(&["table2", "--x-list", "1.0", "--q-list", "0.9,0.92", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,x,q,u,t,true,approx,bound"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].ends_with("AIRY_LIMIT"));
}

#[test]
fn passing_suite_exits_zero() {
    let out = swq(&["verify", "--suite", "recurrence"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn failing_suite_exits_one() {
    // at a loose tolerance the Airy paths agree only to about 1e-8, well short
    // of the fixed 1e-20 threshold
    let out = swq(&["verify", "--suite", "airy", "--grid", "small", "--tol", "1e-3"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 6] = [
        &["eval", "--q", "0.5"],
        &["eval", "--fn", "sw", "--n", "5", "--q", "zero", "--u", "1", "--t", "0"],
        &["verify", "--suite", "nope"],
        &["table1", "--prec-bits", "10"],
        &["eval", "--fn", "limit", "--x", "0.2", "--q", "0.9"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = swq(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn q_out_of_range_is_a_domain_error() {
    let out = swq(&["eval", "--fn", "qairy", "--q", "1.5", "--u", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn help_exits_zero() {
    let out = swq(&["--help"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for sub in ["eval", "table1", "table2", "verify"] {
        assert!(text.contains(sub));
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("swq-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = swq(&[
        "table2", "--x-list", "0.5", "--q-list", "0.9", "--format", "csv", "--out", p,
    ]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written.lines().count(), 2);
}
