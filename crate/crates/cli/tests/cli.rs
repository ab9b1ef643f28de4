use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morphblocks"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

/// Exit code plus the error name from the single stderr object.
fn failure(out: &Output) -> (i32, String) {
    let err: Value = serde_json::from_slice(&out.stderr).expect("one JSON object on stderr");
    assert!(out.stdout.is_empty());
    (out.status.code().unwrap(), err["error"].as_str().unwrap().to_string())
}

fn pairs(v: &Value) -> Vec<(u64, u64)> {
    v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| (b["i"].as_u64().unwrap(), b["j"].as_u64().unwrap()))
        .collect()
}

#[test]
fn gen_prefixes() {
    let tm = run(&["gen", "--spec", &fixture("tm.json"), "--length", "16", "--concat"]);
    assert_eq!(stdout(&tm).trim(), "0110100110010110");
    let p2 = run(&["gen", "--spec", &fixture("p2.json"), "--length", "9"]);
    assert_eq!(stdout(&p2).trim(), "0 1 1 0 1 0 0 0 1");
}

#[test]
fn spec_errors_exit_two() {
    assert_eq!(
        failure(&run(&["gen", "--spec", &fixture("missing.json")])),
        (2, "SpecNotFound".into())
    );
    assert_eq!(
        failure(&run(&["gen", "--spec", &fixture("bad.json")])),
        (2, "NotProlongable".into())
    );
}

#[test]
fn seed_override() {
    let out = run(&[
        "gen",
        "--spec",
        &fixture("tm.json"),
        "--seed-spec",
        "1",
        "--length",
        "8",
        "--concat",
    ]);
    assert_eq!(stdout(&out).trim(), "10010110");
}

#[test]
fn raw_input_ends() {
    let (code, name) = failure(&run(&["gen", "--raw", "0101", "--length", "9"]));
    assert_eq!((code, name.as_str()), (4, "HorizonExceeded"));
    let spaced = run(&["gen", "--raw", "a bb a", "--length", "3"]);
    assert_eq!(stdout(&spaced).trim(), "a bb a");
}

#[test]
fn delta_blocks_of_powers_of_two() {
    let v = json(&run(&[
        "blocks",
        "--spec",
        &fixture("p2.json"),
        "--delta",
        "0",
        "--count",
        "5",
    ]));
    assert_eq!(pairs(&v), [(0, 0), (3, 3), (5, 7), (9, 15), (17, 31)]);
    assert_eq!(v["stats"]["max"], "31/17");
}

#[test]
fn x_blocks_of_literal() {
    let v = json(&run(&["blocks", "--raw", "0100111010101000", "--x", "01"]));
    assert_eq!(pairs(&v), [(0, 2), (3, 4), (6, 13)]);
}

#[test]
fn infinite_block_exits_three() {
    let (code, name) = failure(&run(&[
        "blocks",
        "--spec",
        &fixture("allzero.json"),
        "--delta",
        "0",
        "--horizon",
        "1000",
    ]));
    assert_eq!((code, name.as_str()), (3, "InfiniteBlock"));
}

#[test]
fn limsup_reports() {
    let p2 = json(&run(&[
        "limsup",
        "--spec",
        &fixture("p2.json"),
        "--delta",
        "0",
        "--mode",
        "auto",
    ]));
    assert_eq!(p2["value"], "2");
    assert_eq!(p2["method"], "uniform-closed-form");
    let fib = json(&run(&["limsup", "--spec", &fixture("fib.json"), "--delta", "0"]));
    assert_eq!(fib["value"], "1");
    assert_eq!(fib["method"], "bounded");
    let perron = json(&run(&["limsup", "--spec", &fixture("perron2.json"), "--delta", "0"]));
    assert_eq!(perron["method"], "empirical");
    let est: f64 = perron["value"].as_str().unwrap().parse().unwrap();
    assert!((est - 2.0).abs() < 1e-2);
}

#[test]
fn exact_mode_needs_a_spec() {
    let (code, name) = failure(&run(&["limsup", "--raw", "0100111", "--delta", "0", "--mode", "exact"]));
    assert_eq!((code, name.as_str()), (1, "Unsupported"));
}

fn ones(v: &Value) -> Vec<u64> {
    v["ones"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n.as_u64().unwrap())
        .collect()
}

#[test]
fn constructions() {
    let perron = json(&run(&["construct", "perron", "--mu", "2"]));
    assert_eq!(ones(&perron)[..5], [1, 3, 6, 11, 20]);
    assert_eq!(perron["class_C"], "fails");
    let rational = json(&run(&["construct", "rational", "--p", "3", "--q", "2"]));
    assert_eq!(ones(&rational)[..8], [3, 4, 5, 6, 9, 12, 15, 18]);
}

#[test]
fn construction_writes_spec() {
    let dir = std::env::temp_dir().join(format!("morphblocks-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("perron2.json");
    stdout(&run(&[
        "construct",
        "perron",
        "--mu",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]));
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        written.trim(),
        std::fs::read_to_string(fixture("perron2.json")).unwrap().trim()
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn construction_errors_exit_five() {
    assert_eq!(
        failure(&run(&["construct", "perron", "--matrix", &fixture("swap.json")])),
        (5, "NotPerron".into())
    );
    assert_eq!(
        failure(&run(&["construct", "perron", "--mu", "1"])),
        (5, "InvalidParams".into())
    );
}

fn decimal(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn exponents() {
    let pow2 = json(&run(&[
        "exponent",
        "--indices",
        &fixture("pow2.txt"),
        "--base",
        "2",
        "--digits",
        "100000",
    ]));
    assert!((decimal(&pow2["v_b"]["tail"]) - 1.0).abs() < 0.05);
    assert_eq!(pow2["mu"]["tail"], "2");
    assert_eq!(pow2["class_C"], "holds");
    let tm = json(&run(&["exponent", "--spec", &fixture("tm.json"), "--base", "2"]));
    assert!(decimal(&tm["v_b"]["tail"]) < 1e-3);
    let rational = json(&run(&["exponent", "--construct", "rational:3,2", "--base", "2"]));
    assert!((decimal(&rational["v_b"]["tail"]) - 0.5).abs() < 0.05);
}

#[test]
fn analyze_combines_reports() {
    let v = json(&run(&["analyze", "--spec", &fixture("p2.json"), "--delta", "0"]));
    assert_eq!(v["limsup"]["value"], "2");
    assert!(pairs(&v["blocks"]).len() > 10);
    assert_eq!(v["exponent"]["class_C"], "holds");
}

#[test]
fn output_is_deterministic() {
    let args = ["limsup", "--spec", &fixture("perron2.json"), "--delta", "0"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn text_format() {
    let out = stdout(&run(&[
        "--format",
        "text",
        "blocks",
        "--raw",
        "0100111010101000",
        "--x",
        "01",
    ]));
    assert!(out.starts_with("0\t0\t2\n1\t3\t4\n2\t6\t13\n"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(failure(&run(&["bogus"])).0, 1);
    assert_eq!(failure(&run(&["gen"])), (1, "InvalidParams".into()));
    assert!(run(&["--help"]).status.success());
}
