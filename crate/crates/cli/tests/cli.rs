use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};
use tempfile::TempDir;

const C4: &str = r#"{"vertices":["a","b","c","d"],"edges":[{"ends":["a","b"]},{"ends":["b","c"]},{"ends":["c","d"]},{"ends":["d","a"]}]}"#;
const B3: &str = r#"{"vertices":["u","w"],"edges":[{"ends":["u","w"]},{"ends":["u","w"]},{"ends":["u","w"]}]}"#;
const C3: &str = r#"{"vertices":["a","b","c"],"edges":[{"ends":["a","b"]},{"ends":["b","c"]},{"ends":["c","a"]}]}"#;
const T2: &str = r#"{"vertices":["a","b","c","d"],"edges":[{"ends":["a","b"]},{"ends":["b","c"]},{"ends":["c","a"]},{"id":"br","ends":["c","d"]}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropabel"))
}

fn graph_file(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn qs_on_c4() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "c4.json", C4);
    let out = run(&["qs", "--graph", &g, "--divisor", r#"{"values":{"a":2,"b":-1,"c":-1}}"#, "--v0", "a"]);
    let v = stdout_json(&out);
    assert_eq!(v["values"], json!({"a": 1, "d": -1}));
    assert_eq!(v["verified"], json!(true));
    assert_eq!(v["v"], json!(1));
}

#[test]
fn divisor_from_file_and_graph_from_stdin() {
    let dir = TempDir::new().unwrap();
    let d = graph_file(&dir, "d.json", r#"{"values":{"a":2,"b":-1,"c":-1}}"#);
    let mut child = bin()
        .args(["qs", "--graph", "-", "--divisor", &d, "--v0", "a"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(C4.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout_json(&out)["values"], json!({"a": 1, "d": -1}));
}

#[test]
fn plan_on_b3() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "b3.json", B3);
    let v = stdout_json(&run(&["plan", "--graph", &g, "--v0", "u"]));
    assert_eq!(v["diagonal"], json!(true));
    assert_eq!(v["centers"], json!([["w"]]));
}

#[test]
fn exit_codes() {
    let out = run(&["qs", "--graph", "/nonexistent/graph.json", "--divisor", "{\"values\":{}}", "--v0", "a"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], json!("input"));

    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "c4.json", C4);
    assert_eq!(run(&["qs", "--graph", &g, "--divisor", "{\"values\":{}}", "--v0", "zz"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));

    let t2 = graph_file(&dir, "t2.json", T2);
    assert_eq!(run(&["hyper-scan", "--graph", &t2]).status.code(), Some(2));

    // a degree-1 class on C3 with μ = 0 holds several quasistable divisors
    let c3 = graph_file(&dir, "c3.json", C3);
    let out = run(&["oracle", "--graph", &c3, "--divisor", r#"{"values":{"b":1}}"#, "--v0", "a"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "oracle",
        "--graph",
        &g,
        "--divisor",
        r#"{"values":{"a":2,"b":-1,"c":-1}}"#,
        "--v0",
        "a",
        "--max-candidates",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_reports() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "c4.json", C4);
    let v = stdout_json(&run(&["classify", "--graph", &g, "--v0", "a", "--e1", "e0", "--e2", "e1", "--denominators", "3,4"]));
    assert_eq!(v["verdict"], json!("BLOWUP_Z1xZ2"));
    assert_eq!(v["fast_path"], json!("TWO_TAIL"));
    assert_eq!(v["z1"], json!(["b"]));
    assert_eq!(v["denominators"], json!([3, 4]));

    let t2 = graph_file(&dir, "t2.json", T2);
    let v = stdout_json(&run(&["classify", "--graph", &t2, "--v0", "a", "--e1", "br", "--e2", "e0", "--denominators", "3"]));
    assert_eq!(v["verdict"], json!("DEFINED"));
    assert_eq!(v["fast_path"], json!("ONE_TAIL"));
}

#[test]
fn tropical_commands() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "c4.json", C4);
    let v = stdout_json(&run(&[
        "abel2",
        "--graph",
        &g,
        "--v0",
        "a",
        "--p1",
        r#"{"vertex":"c"}"#,
        "--p2",
        r#"{"vertex":"c"}"#,
    ]));
    assert_eq!(v["points"], json!([]));
    assert_eq!(v["n"], json!(2));

    let v = stdout_json(&run(&[
        "region", "--graph", &g, "--v0", "a", "--e1", "e0:rev", "--e2", "e1", "--region", "x_lt_y", "--denominators", "3,4",
    ]));
    assert_eq!(v["status"], json!("constant"));
    let v = stdout_json(&run(&[
        "region", "--graph", &g, "--v0", "a", "--e1", "e0", "--e2", "e1", "--region", "X_LT_Y", "--denominators", "3,4",
    ]));
    assert_eq!(v["status"], json!("witness"));
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn hemisphere_commands() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "c4.json", C4);
    let v = stdout_json(&run(&["hemispheres", "--graph", &g, "--delta", "2"]));
    assert_eq!(v["hemispheres"].as_array().unwrap().len(), 12);
    let v = stdout_json(&run(&["tails", "--graph", &g, "--v0", "a", "--deltas", "2"]));
    assert_eq!(v["tails"].as_array().unwrap().len(), 6);
    let v = stdout_json(&run(&["convert", "--graph", &g, "--v0", "a", "--v1", "b", "--v2", "c"]));
    assert_eq!(v["values"], json!({"a": 1, "d": -1}));
}

#[test]
fn hyper_scan_on_c4() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "c4.json", C4);
    let v = stdout_json(&run(&["hyper-scan", "--graph", &g]));
    assert_eq!(v["pseudo_hyperelliptic"], json!(true));
    let found = v["witnesses"].as_array().unwrap().iter().any(|w| {
        w["level"] == json!("GAMMA")
            && w["pair1"] == json!(["a", "b"])
            && w["pair2"] == json!(["c", "d"])
            && w["certificate"] == json!({"a": 1, "b": 1, "c": 0, "d": 0})
    });
    assert!(found);
}

#[test]
fn output_is_deterministic_and_versioned() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "c4.json", C4);
    let out_path = dir.path().join("out.json");
    let args = ["classify", "--graph", &g, "--v0", "a", "--e1", "e0", "--e2", "e2", "--denominators", "3,4", "--jobs", "2"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let mut with_output: Vec<&str> = args.to_vec();
    let p = out_path.to_string_lossy().into_owned();
    with_output.extend(["--output", &p]);
    assert!(run(&with_output).status.success());
    let written = std::fs::read(&out_path).unwrap();
    assert_eq!(written, first.stdout);
    let text = String::from_utf8(written).unwrap();
    tropabel::json::check_report(&text).unwrap();
}
