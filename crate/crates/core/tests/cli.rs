//! The binary end to end.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_elliptic-k3")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn kummer_fibers() {
    let (code, v) = run(&["fibers", "--A", "(t^4-1)^2", "--B", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["counts"], "4I*0");
    assert_eq!(v["euler"], 24);
    assert_eq!(v["surface_class"], "K3");
}

#[test]
fn omega_prints_numbers() {
    let (_, v) = run(&["kummer", "omega-d4"]);
    assert_eq!(v["rank"], 15);
    assert_eq!(v["det"], -1024);
    assert_eq!(v["disc_group"], serde_json::json!([4, 4, 4, 4, 4]));
    assert_eq!(v["roots"], 0);
}

#[test]
fn sigma_quotient_from_seed() {
    let (code, v) = run(&["quotient", "sigma", "--family", "random", "--n", "3", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["fiber_at_zero"], "IV*");
    assert_eq!(v["target"]["euler"], 24);
    assert_eq!(v["target"]["surface_class"], "K3");
}

#[test]
fn four_torsion_points() {
    let (_, v) = run(&["quotient", "four", "--e", "2", "--f", "7", "--points", "20", "--seed", "3"]);
    assert_eq!(v["matches_closed_form"], true);
    assert_eq!(v["points_ok"], 20);
}

#[test]
fn lattice_from_file() {
    let dir = std::env::temp_dir().join("elliptic-k3-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.json");
    std::fs::write(&path, r#"{"gram": [[2, -1], [-1, 2]], "labels": ["a", "b"]}"#).unwrap();
    let (code, v) = run(&["lattice", "invariants", "--gram", path.to_str().unwrap(), "--roots"]);
    assert_eq!(code, 0);
    assert_eq!(v["det"], 3);
    assert_eq!(v["roots"], 6);
}

#[test]
fn error_codes() {
    let (code, v) = run(&["fibers", "--A", "0", "--B", "0"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
    assert_eq!(run(&["lattice", "twist"]).0, 1);
    assert_eq!(run(&["pair-property", "--h", "Z7", "--g", "D5"]).0, 1);
}
