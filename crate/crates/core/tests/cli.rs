use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordcurve")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn pi() {
    let out = run(&["pi", "--n", "4", "--d", "15"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"k0":2,"pi":16}"#);
}

#[test]
fn shape_and_hilbert() {
    let out = run(&["shape", "--n", "4", "--d", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 4);
    assert_eq!(v["blocks"][2][0]["twist"], 5);

    let out = run(&["hilbert", "--n", "4", "--d", "15", "--h-max", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["pi", "--n", "4", "--d", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["fixture", "--id", "ex9"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_ordcurve"))
        .args(["en", "--n", "3", "--k0", "1"])
        .env("GF_PRIME", "32004")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixture_verify_all() {
    for id in ["ex1", "ex2"] {
        let out = run(&["fixture", "--id", id, "--verify-all"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn patched_fixture_fails_with_location() {
    let dir = std::env::temp_dir().join(format!("ordcurve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ex1.txt")).unwrap();
    let path = dir.join("ex1.txt");
    std::fs::write(&path, src.replace("[0, 0, -T, Z, -Y]", "[0, 0, -T, T, -Y]")).unwrap();
    let out = run(&["fixture", "--verify-all", "--path", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("d0*d1"));
}

#[test]
fn degenerate_section_exits_1() {
    let out = run(&["section", "--fixture", "ex1", "--coeffs", "0,0,0,1,0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert!(v["error"].as_str().unwrap().contains("non-generic"));
}

#[test]
fn ordinary_sections_deterministic() {
    let args = ["ordinary", "--fixture", "ex1", "--sections", "3", "--seed", "7"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, run(&args).stdout);
}
