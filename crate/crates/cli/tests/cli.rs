use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const TRIANGLE: &str = r#"{"version": 1, "name": "triangle", "components": [
  {"id": "x", "type": "line", "coeffs": [1, 0, 0]},
  {"id": "y", "type": "line", "coeffs": [0, 1, 0]},
  {"id": "z", "type": "line", "coeffs": [0, 0, 1]}]}"#;

fn clarr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clarr"))
        .args(args)
        .env("CLARR_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn scene_file(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli_{name}.json"));
    std::fs::write(&path, body).unwrap();
    path
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_triangle() {
    let path = scene_file("triangle", TRIANGLE);
    let out = clarr(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["curve"]["degree"], 3);
    assert_eq!(v["invariants"]["tau"], 3);
    assert_eq!(v["invariants"]["free"]["exponents"], serde_json::json!([1, 1]));
    assert!(v.get("timing_ms").is_none());

    let timed = json(&clarr(&["analyze", path.to_str().unwrap(), "--timing"]));
    assert!(timed["timing_ms"].is_object());
}

#[test]
fn reports_are_byte_identical() {
    let path = scene_file("determinism", TRIANGLE);
    let a = clarr(&["analyze", path.to_str().unwrap()]);
    let b = clarr(&["analyze", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let t1 = clarr(&["examples", "run", "near_pencil_4", "--format", "text"]);
    let t2 = clarr(&["examples", "run", "near_pencil_4", "--format", "text"]);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn text_format() {
    let path = scene_file("text", TRIANGLE);
    let out = clarr(&["analyze", path.to_str().unwrap(), "--format", "text", "--tau", "local"]);
    assert_eq!(code(&out), 0);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("free with exponents (1, 1)"), "{s}");
    assert!(s.contains("(0 : 0 : 1)"), "{s}");
}

#[test]
fn verify_targets() {
    let path = scene_file("verify", TRIANGLE);
    let p = path.to_str().unwrap();
    let out = clarr(&["verify", p, "--theorem", "A", "--target", "x"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["verdict"]["case"], "A.1.b");

    let line = r#"{"id": "L", "type": "line", "coeffs": [1, 1, 1]}"#;
    let out = clarr(&["verify", p, "--theorem", "A", "--target", line]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["op"], "line_addition");

    let conic = r#"{"id": "C", "type": "conic", "coeffs": [1, 1, 1, 1, 1, -9]}"#;
    let out = clarr(&["verify", p, "--theorem", "identities", "--target", conic]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["mu_formula"]["holds"], true);

    let out = clarr(&["verify", p, "--theorem", "free-case"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["violations"], 0);

    // a conic theorem with a line target
    assert_eq!(code(&clarr(&["verify", p, "--theorem", "B1", "--target", "x"])), 2);
    assert_eq!(code(&clarr(&["verify", p, "--theorem", "A", "--target", "w"])), 2);
}

#[test]
fn verify_bundled_notfree_identities() {
    let src = clarr(&["examples", "show", "notfree_pencil"]);
    assert_eq!(code(&src), 0);
    let path = scene_file("notfree", std::str::from_utf8(&src.stdout).unwrap());
    let out = clarr(&["verify", path.to_str().unwrap(), "--theorem", "identities", "--target", "C1"]);
    assert_eq!(code(&out), 0);
    let ctx = &json(&out)["result"]["deletion_context"];
    assert_eq!(ctx["k"], 4);
    assert_eq!(ctx["holds"], true);
}

#[test]
fn schema_errors_exit_2() {
    let cases = [
        ("noversion", r#"{"components": []}"#),
        ("badversion", r#"{"version": 9, "components": []}"#),
        ("empty", r#"{"version": 1, "components": []}"#),
        ("malformed", "{"),
        ("dup", r#"{"version": 1, "components": [
            {"id": "a", "type": "line", "coeffs": [1, 0, 0]},
            {"id": "a", "type": "line", "coeffs": [0, 1, 0]}]}"#),
        ("singular", r#"{"version": 1, "components": [
            {"id": "c", "type": "conic", "coeffs": [1, 0, 0, -1, 0, 0]}]}"#),
        ("repeated", r#"{"version": 1, "components": [
            {"id": "a", "type": "line", "coeffs": [1, 0, 0]},
            {"id": "b", "type": "line", "coeffs": [2, 0, 0]}]}"#),
        ("unknownfield", r#"{"version": 1, "extra": 1, "components": [
            {"id": "a", "type": "line", "coeffs": [1, 0, 0]}]}"#),
    ];
    for (name, body) in cases {
        let path = scene_file(name, body);
        let out = clarr(&["analyze", path.to_str().unwrap()]);
        assert_eq!(code(&out), 2, "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(code(&clarr(&["analyze", "/nonexistent/scene.json"])), 2);
}

#[test]
fn unrepresentable_point_exits_3() {
    // the conics meet in (+-i : +-sqrt(3) : 1)
    let body = r#"{"version": 1, "components": [
        {"id": "c1", "type": "conic", "coeffs": [1, 0, 0, 1, 0, -2]},
        {"id": "c2", "type": "conic", "coeffs": [1, 0, 0, 2, 0, -5]}]}"#;
    let path = scene_file("unrep", body);
    let out = clarr(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn examples_list_and_run() {
    let out = clarr(&["examples", "list"]);
    assert_eq!(code(&out), 0);
    let names = String::from_utf8(out.stdout).unwrap();
    for n in ["triangle", "near_pencil_4", "chern_factor", "notfree_pencil", "free_6_7", "mu_formula_suite"] {
        assert!(names.lines().any(|l| l == n), "{n}");
    }
    for n in ["triangle", "notfree_pencil", "mu_formula_suite"] {
        let out = clarr(&["examples", "run", n]);
        assert_eq!(code(&out), 0, "{n}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stderr).contains("pass"));
    }
    assert_eq!(code(&clarr(&["examples", "run", "nope"])), 2);
}

#[test]
fn thread_setting_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_clarr"))
        .args(["examples", "list"])
        .env("CLARR_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
