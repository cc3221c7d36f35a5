use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn hwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hwb")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn valid_algebra_exits_zero() {
    let o = hwb(&["validate", "--algebra", &data("sl2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "ok");
}

#[test]
fn malformed_json_exits_one_with_position() {
    let o = hwb(&["validate", "--algebra", &data("malformed.json")]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["error"], "malformed_json");
    assert!(v["line"].as_u64().is_some());
    assert!(!o.stderr.is_empty());
}

#[test]
fn missing_file_exits_one() {
    let o = hwb(&["validate", "--algebra", &data("does_not_exist.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn jacobi_violation_exits_two() {
    let o = hwb(&["validate", "--algebra", &data("nonjacobi.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"], "validation");
}

#[test]
fn degree_cap_exits_three() {
    let o = hwb(&["--budget-mb", "1", "ce", "--algebra", &data("gl2.json"), "--max-degree", "30"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn ce_reports_heisenberg_dims() {
    let o = hwb(&["ce", "--algebra", &data("heisenberg.json"), "--trivial"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["dims"], serde_json::json!([1, 2, 2, 1]));
}

#[test]
fn table_format_flattens_keys() {
    let o = hwb(&["--format", "table", "ce", "--algebra", &data("heisenberg.json"), "--trivial"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.lines().any(|l| l.starts_with("dims") && l.ends_with("(1, 2, 2, 1)")));
    assert!(s.lines().any(|l| l.starts_with("algebra.dim")));
}

#[test]
fn unknown_probe_convention_exits_two() {
    let o = hwb(&["genera", "probe", "--tau", "0.9i", "--convention", "3pi"]);
    assert_eq!(o.status.code(), Some(2));
}
