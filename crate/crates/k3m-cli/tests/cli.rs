//! End-to-end behaviour of the `k3m` binary: payloads, formats, exit codes.

use std::process::{Command, Output};

use serde_json::{json, Value};

fn k3m(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3m"))
        .args(args)
        .output()
        .expect("run k3m")
}

fn result(args: &[&str]) -> Value {
    let out = k3m(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON envelope");
    for key in ["command", "params", "provenance", "result"] {
        assert!(v.get(key).is_some(), "envelope lacks {key}");
    }
    v["result"].clone()
}

fn stdout(args: &[&str]) -> String {
    let out = k3m(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn pell_min_for_thirteen() {
    assert_eq!(
        result(&["pell", "min", "--d", "13", "--t", "1"]),
        json!({"a": 649, "b": 180})
    );
}

#[test]
fn pell_min_unsolvable_is_null() {
    assert_eq!(result(&["pell", "min", "--d", "52", "--t", "5"]), Value::Null);
}

#[test]
fn cone_s2_csv_rows() {
    let csv = stdout(&["cone", "s2", "--e-from", "1", "--e-to", "13", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 14);
    assert_eq!(lines[0], "e,P_e(1),P_4e(5),mov,nef");
    assert_eq!(lines[1], "1,*,*,1,2/3");
    assert_eq!(lines[13], "13,\"(649,180)\",-,2340/649,=");
}

#[test]
fn period_image_for_m4() {
    assert_eq!(
        result(&["period-image", "--m", "4", "--n", "1", "--gamma", "2"]),
        json!({"excluded_d": [2, 6, 8]})
    );
}

#[test]
fn period_image_with_oracle() {
    let r = result(&["period-image", "--m", "2", "--n", "3", "--gamma", "2", "--bound", "8"]);
    assert_eq!(r["oracle_agrees"], json!(true));
    assert_eq!(r["excluded_d"], json!([6]));
}

#[test]
fn chi_and_fujiki() {
    assert_eq!(result(&["chi", "--m", "2", "--q", "22"]), json!({"chi": 91}));
    assert_eq!(result(&["fujiki", "--m", "2"]), json!({"fujiki_constant": "3"}));
    assert_eq!(
        result(&["fujiki", "--series", "kummer", "--m", "2"]),
        json!({"fujiki_constant": "9"})
    );
}

#[test]
fn aut_and_hilb_square() {
    assert_eq!(
        result(&["aut", "fourfold", "--n", "3", "--e2", "2"]),
        json!({"aut": "1", "bir": "Z x| Z/2"})
    );
    assert_eq!(
        result(&["hilb-square", "--n", "3", "--e", "7", "--gamma", "2"]),
        json!({"a": 5, "b": 2, "gamma": 2})
    );
    assert_eq!(
        result(&["hilb-square", "--n", "11", "--e", "4", "--gamma", "2"]),
        Value::Null
    );
}

#[test]
fn lattice_dual_is_an_involution() {
    let d = result(&["lattice", "dual", "--m", "4", "--n", "1", "--gamma", "2"]);
    assert_eq!(d, json!({"m": 2, "n": 3, "gamma": 2}));
    let back = result(&["lattice", "dual", "--m", "2", "--n", "3", "--gamma", "2"]);
    assert_eq!(back, json!({"m": 4, "n": 1, "gamma": 2}));
}

#[test]
fn envelope_keys_are_sorted() {
    let s = stdout(&["pell", "fundamental", "--d", "2"]);
    let positions: Vec<usize> = ["\"command\"", "\"params\"", "\"provenance\"", "\"result\""]
        .iter()
        .map(|k| s.find(k).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn domain_errors_exit_one_with_name() {
    let out = k3m(&["pell", "fundamental", "--d", "9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PerfectSquareInput"));
    let out = k3m(&["reproduce", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("UnknownTable"));
    let out = k3m(&["chi", "--m", "2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("OddSquare"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(k3m(&["pell", "min", "--d", "13"]).status.code(), Some(2));
    assert_eq!(k3m(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(k3m(&["pell", "min", "--d", "x", "--t", "1"]).status.code(), Some(2));
    assert_eq!(k3m(&["reproduce", "period-image-m4", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(k3m(&["--help"]).status.code(), Some(0));
}
