//! End-to-end checks of the command-line surface: exit codes, formats, and
//! byte determinism of reports.

use std::process::Command;

fn loopk() -> Command {
    Command::new(env!("CARGO_BIN_EXE_loopk"))
}

#[test]
fn verify_ybe_passes() {
    let out = loopk().args(["verify", "ybe"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], serde_json::json!(true));
}

#[test]
fn usage_error_exits_2() {
    let out = loopk().args(["verify", "no-such-suite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = loopk().args(["verify", "special", "--ci"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_deterministic() {
    let run = || {
        loopk()
            .args(["verify", "special", "--seed", "11", "--format", "json"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn degree_example() {
    let out = loopk().args(["degree", "--a", "0", "--b", "2", "--c", "2"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], serde_json::json!("16"));
}

#[test]
fn rs_count_n3_totals_seven() {
    let out = loopk().args(["rs-count", "--n", "3"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], serde_json::json!(7));
}

#[test]
fn zr_roundtrips_through_the_schema() {
    let out = loopk()
        .args(["zr", "--n", "1", "--N", "2", "--r", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let j: loopk::PolyJson = serde_json::from_slice(&out.stdout).unwrap();
    let p = loopk::poly_from_json(&j).unwrap();
    assert_eq!(loopk::poly_to_json(&p), j);
}

#[test]
fn budget_errors_are_clean() {
    let out = loopk().args(["fpl", "--n", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = loopk().args(["psi", "--n", "5", "--r", "2,4,6,8,10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
