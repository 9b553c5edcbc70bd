use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn totprim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_totprim"))
        .args(args)
        .env_remove("TOTPRIM_SCAN_CAP")
        .env_remove("TOTPRIM_DEGREE_CAP")
        .env_remove("TOTPRIM_JOBS")
        .output()
        .expect("run totprim")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = totprim(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (code(&out), v)
}

fn golden(name: &str, args: &[&str]) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = totprim(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(String::from_utf8_lossy(&out.stdout), want, "golden {name} differs");
}

#[test]
fn check_worked_example() {
    let (c, v) = json(&["check", "--poly", "x^6+3*x^5+x^2+x+21"]);
    assert_eq!(c, 0);
    let r = &v["result"];
    assert_eq!(r["totally_primitive"], true);
    assert_eq!(r["obstructions"], Value::Array(vec![]));
    assert_eq!(r["reductions"]["3"], "2*x^2+x");
    assert_eq!(v["config"]["seed"], 0);
}

#[test]
fn golden_outputs() {
    golden("check.json", &["check", "--poly", "x^6+3*x^5+x^2+x+21"]);
    golden("generate.json", &["generate", "--polys", "x^2+1,x^2+x+1", "--count", "3"]);
    golden("factor.json", &["factor", "--poly", "3*(x^2+x+2)*(x+5)^2"]);
    golden("scan.json", &["scan", "--mode", "prime", "--poly", "x^2+x+41", "--range", "0..39"]);
    golden("swan.json", &["swan", "--p", "3", "--a", "5", "--maxdeg", "1"]);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["--json", "generate", "--polys", "x^2+1", "--prog", "1,2", "--count", "4"][..],
        &["--json", "--ring", "fpt:3", "--seed", "7", "swan", "--maxdeg", "2"][..],
        &["--json", "--jobs", "3", "scan", "--poly", "x^2+1", "--range", "1..300"][..],
    ] {
        let a = totprim(args);
        let b = totprim(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn hypothesis_violations_exit_2() {
    let out = totprim(&["generate", "--polys", "x*(x-1)"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("gcd of its values is 2"));
    let (c, v) = json(&["generate", "--polys", "x*(x-1)"]);
    assert_eq!(c, 2);
    assert_eq!(v["error"]["code"], 2);
    assert_eq!(code(&totprim(&["locunit", "--p", "5", "--poly", "x^2+1"])), 2);
    assert_eq!(code(&totprim(&["scan", "--mode", "prime", "--poly", "x*(x+1)", "--range", "1..5"])), 2);
}

#[test]
fn effort_exhaustion_exits_3() {
    let (c, v) = json(&["--scan-cap", "1", "generate", "--polys", "x^2+1,x^2+x+1", "--count", "5"]);
    assert_eq!(c, 3);
    assert!(v["error"]["partial"]["stream"].is_array());
    let out = Command::new(env!("CARGO_BIN_EXE_totprim"))
        .args(["factor", "--poly", "x^4-1"])
        .env("TOTPRIM_DEGREE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn other_errors_exit_1() {
    assert_eq!(code(&totprim(&["--ring", "q", "check", "--poly", "x"])), 1);
    assert_eq!(code(&totprim(&["check", "--poly", "x^"])), 1);
    assert_eq!(code(&totprim(&["check", "--bogus"])), 1);
    assert_eq!(code(&totprim(&["--scan-cap", "0", "generate", "--polys", "x"])), 1);
    assert_eq!(code(&totprim(&["--help"])), 0);
}

#[test]
fn empty_stream() {
    let (c, v) = json(&["generate", "--polys", "x", "--count", "0"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["stream"], Value::Array(vec![]));
}

#[test]
fn other_rings() {
    let (c, v) = json(&["--ring", "fpt:3", "check", "--poly", "x^12+t^5"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["totally_primitive"], true);
    assert_eq!(v["config"]["ring"], "fpt:3");
    let (c, v) = json(&["--ring", "zloc:3", "generate", "--polys", "x^2+1", "--count", "3"]);
    assert_eq!(c, 0);
    for e in v["result"]["stream"].as_array().unwrap() {
        assert_eq!(e["witnesses"][0]["unit"], true);
    }
    let (c, v) = json(&["locunit", "--p", "3", "--poly", "x^2+1", "--samples", "0,1,1/2,7/5,-4"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["all_units"], true);
}

#[test]
fn scans_and_extraction() {
    let (_, v) = json(&["scan", "--poly", "x", "--range", "1..100"]);
    assert_eq!(v["result"]["squarefree"], 61);
    assert_eq!(v["result"]["squarefree_density"], "61/100");
    let (_, v) = json(&["extract", "--polys", "x", "--sample", "1..12"]);
    assert_eq!(v["result"]["kept"], serde_json::json!(["1", "2", "3", "5", "7", "11"]));
}

#[test]
fn text_tables() {
    let out = totprim(&["generate", "--polys", "x^2+1", "--count", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("#  m"), "{text}");
    assert!(text.contains("verified:  2 emissions"), "{text}");
}
