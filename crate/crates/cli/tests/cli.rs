use std::process::{Command, Output};

use serde_json::Value;

fn idealcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealcheck"))
        .args(args)
        .env_remove("IDEALCHECK_MEMORY_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = idealcheck(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

fn strip_timing(mut v: Value) -> Value {
    if let Some(r) = v.get_mut("report").and_then(Value::as_object_mut) {
        r.remove("timing");
    }
    v
}

#[test]
fn dagger_holds_exits_zero() {
    let (code, v) = json(&["dagger", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "dagger");
    assert_eq!(v["config"]["n"], 4);
    assert_eq!(v["report"]["holds"], true);
    assert_eq!(v["report"]["p_degree"], 7);
    assert_eq!(v["report"]["q0_degree"], 8);
    assert_eq!(v["report"]["counterexamples"].as_array().unwrap().len(), 0);
}

#[test]
fn dagger_over_cap_exits_three_with_telemetry() {
    let (code, v) = json(&["dagger", "--n", "6", "--memory-cap", "8KiB"]);
    assert_eq!(code, 3);
    assert!(v["report"]["holds"].is_null());
    assert_eq!(v["report"]["verdict"], "aborted");
    assert_eq!(v["report"]["memory_cap_bytes"], 8192);
}

#[test]
fn memory_cap_is_read_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_idealcheck"))
        .args(["dagger", "--n", "6", "--format", "json"])
        .env("IDEALCHECK_MEMORY_CAP", "4KiB")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["memory_cap_bytes"], 4096);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["dagger"][..],
        &["dagger", "--n", "0"],
        &["dagger", "--n", "3", "--memory-cap", "lots"],
        &["lemma", "--trials", "0"],
        &["star"],
        &["star", "--random", "5", "--integers", "4,6"],
        &["star", "--integers", "0,6"],
        &["ideal", "<x^2*q>"],
        &["frobnicate"],
    ] {
        let out = idealcheck(args);
        assert_eq!(out.status.code(), Some(64), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(idealcheck(&["--help"]).status.code(), Some(0));
}

#[test]
fn seeded_suites_are_byte_identical() {
    for args in [
        &["lemma", "--trials", "200", "--seed", "9", "--format", "json"][..],
        &["star", "--random", "200", "--seed", "9", "--format", "json"],
    ] {
        let a = idealcheck(args);
        let b = idealcheck(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let (_, v) = json(&["lemma", "--seed", "123"]);
    assert_eq!(v["config"]["seed"], 123);
    assert_eq!(v["suites"][1]["seed"], 123);
}

#[test]
fn dagger_reports_differ_only_in_timing() {
    let (_, a) = json(&["dagger", "--n", "5", "--workers", "1"]);
    let (_, b) = json(&["dagger", "--n", "5", "--workers", "1"]);
    assert!(a["report"]["timing"].is_array());
    assert_eq!(strip_timing(a), strip_timing(b));
}

#[test]
fn out_file_receives_the_json_report() {
    let dir = std::env::temp_dir().join(format!("idealcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = idealcheck(&["star", "--integers", "12,18", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(*)_2: true"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["primes"], serde_json::json!([2, 3]));
    assert_eq!(v["matrix"], serde_json::json!([[2, 1], [1, 2]]));
    assert_eq!(v["star"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn matrix_files_are_accepted() {
    let dir = std::env::temp_dir().join(format!("idealcheck-matrix-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.txt");
    std::fs::write(&path, "# three ideals, two primes\n2 1\n1 2\n\n0 5\n").unwrap();
    let (code, v) = json(&["star", "--matrix", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["doublestar"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ideal_command_reports_both_identities() {
    let (code, v) = json(&["ideal", "<x^2*y>", "<x*y^2>"]);
    assert_eq!(code, 0);
    assert_eq!(v["g"][0], "<x^3*y^3>");
    assert_eq!(v["l"][1], "<x^2*y^2>");
    assert_eq!(v["doublestar"]["left"], "<x^4*y^3, x^3*y^4>");
    assert_eq!(v["doublestar"]["relation"], "strict_subset");
    assert_eq!(v["inclusion_holds"], true);
}

#[test]
fn examples_command_passes() {
    let out = idealcheck(&["examples"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x^2*y*z"));
    assert!(text.ends_with("examples: all passed\n"));
}
