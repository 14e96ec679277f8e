use std::path::PathBuf;
use std::process::Command;

use fracext::app::strip_timing;
use fracext::io::parse_graph;
use fracext::run_args;
use fracext_core::extendability::{Counterexample, ExtendabilityReport};
use fracext_core::graph::{circulant, Graph};
use serde_json::Value;

fn testdata(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("testdata")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = run_args(std::iter::once("fracext").chain(args.iter().copied()));
    let json = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stdout));
    (out.code, json)
}

#[test]
fn odd_cycle_gets_all_halves() {
    let (code, json) = run(&["check", "fpm", "--circulant", "5:1"]);
    assert_eq!(code, 0);
    let result = &json["result"];
    assert_eq!(result["holds"], true);
    assert_eq!(result["nu_f"], 5);
    let assignment = result["certificate"]["assignment"].as_array().unwrap();
    assert_eq!(assignment.len(), 5);
    assert!(assignment.iter().all(|e| e[2] == 1), "{assignment:?}");
}

#[test]
fn nine_circulant_is_not_two_extendable() {
    let (code, json) = run(&["check", "ext", "--t", "2", "--circulant", "9:1,3"]);
    assert_eq!(code, 1);
    let report: ExtendabilityReport = serde_json::from_value(json["result"].clone()).unwrap();
    assert!(!report.verdict);
    let g = circulant(9, &[1, 3]).unwrap();
    match report.counterexample.unwrap() {
        Counterexample::Fractional { matching, witness } => {
            matching.validate(&g).unwrap();
            witness.validate(&g, matching.vertex_mask()).unwrap();
        }
        other => panic!("unexpected counterexample {other:?}"),
    }
}

#[test]
fn k4_bridge_file() {
    let path = testdata("k4bridge.txt");
    let (code, json) = run(&["check", "ext", "--t", "1", "--edges", &path]);
    assert_eq!(code, 0);
    assert_eq!(json["result"]["verdict"], true);
    let (code, json) = run(&["check", "ext", "--classical", "--t", "1", "--edges", &path]);
    assert_eq!(code, 1);
    assert_eq!(json["result"]["counterexample"]["matching"], serde_json::json!([[3, 4]]));
}

#[test]
fn perfect_matching_certificates() {
    let (code, json) = run(&["check", "pm", "--circulant", "8:1"]);
    assert_eq!(code, 0);
    assert_eq!(json["result"]["matching"].as_array().unwrap().len(), 4);
    let (code, json) = run(&["check", "pm", "--circulant", "7:1,2"]);
    assert_eq!(code, 1);
    assert_eq!(json["result"]["barrier"]["odd_components"], 1);
}

#[test]
fn near_extendability() {
    let (code, _) = run(&["check", "near", "--t", "1", "--circulant", "9:1,2"]);
    assert_eq!(code, 0);
    let (code, json) = run(&["check", "near", "--t", "1", "--circulant", "9:1"]);
    assert_eq!(code, 1);
    assert_eq!(json["result"]["counterexample"]["kind"], "near_half");
}

#[test]
fn malformed_specs_name_the_token() {
    for (args, token) in [
        (vec!["check", "fpm", "--circulant", "9:1,x"], "'x'"),
        (vec!["check", "fpm", "--group", "Q9", "--set", "{1}"], "'Q9'"),
        (vec!["check", "fpm", "--family", "main-xi:3"], "main-xi"),
        (vec!["check", "fpm", "--group", "Z9", "--set", "{(1,0}"], "(1,0"),
    ] {
        let (code, json) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        let message = json["error"]["message"].as_str().unwrap();
        assert!(message.contains(token), "{message}");
    }
}

#[test]
fn usage_errors_are_json() {
    for args in [
        vec!["check", "fpm"],
        vec!["check", "fpm", "--circulant", "5:1", "--family", "main-i:5"],
        vec!["check", "tpm", "--circulant", "5:1"],
        vec!["verify", "f2e", "--orders", "9..5"],
        vec!["verify", "f2e", "--orders", "3..9"],
        vec!["verify", "f1e", "--orders", "3..70"],
        vec!["verify", "f1e", "--orders", "3..5", "--spot", "33"],
        vec!["export", "--circulant", "5:1", "--format", "png"],
        vec!["check", "ext", "--t", "4", "--circulant", "13:1,2"],
        vec!["check", "fpm", "--edges", "/nonexistent/graph.txt"],
        vec!["frobnicate"],
    ] {
        let (code, json) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(json["exit_code"], 2);
        assert!(json["error"]["kind"].is_string());
    }
    let (_, json) = run(&["verify", "f1e", "--orders", "3..70"]);
    assert_eq!(json["error"]["kind"], "cap");
}

#[test]
fn help_is_plain_text() {
    let out = run_args(["fracext", "--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verify"));
}

#[test]
fn scans_exit_zero_and_render_a_table() {
    let out = run_args(["fracext", "--threads", "2", "verify", "f2e", "--orders", "5..11", "--probe"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.starts_with("order"));
    let json: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(json["result"]["verified"], true);
    assert_eq!(json["result"]["scan"]["probe"]["violations"], 0);
    assert_eq!(json["run"]["workers"], 2);
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "f2e", "--orders", "5..13", "--cross-check", "9", "--spot", "15", "--samples", "5", "--seed", "11"];
    let mut runs = Vec::new();
    for threads in ["1", "3"] {
        let mut full = vec!["fracext", "--threads", threads];
        full.extend(args);
        let out = run_args(full);
        assert_eq!(out.code, 0);
        let mut json: Value = serde_json::from_str(&out.stdout).unwrap();
        strip_timing(&mut json);
        json["run"]["workers"] = Value::Null;
        runs.push(json);
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0]["run"]["seed"], 11);
}

#[test]
fn exports() {
    let out = run_args(["fracext", "export", "--family", "main-x:3", "--format", "dot"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("[label=\"(1,2)\"]"), "{}", out.stdout);
    let again = run_args(["fracext", "export", "--family", "main-x:3", "--format", "dot"]);
    assert_eq!(out.stdout, again.stdout);

    let out = run_args(["fracext", "export", "--circulant", "15:1,4", "--format", "edgelist"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "15 30");
    assert_eq!(lines.len(), 31);

    let k4 = testdata("k4bridge.txt");
    let sources: [&[&str]; 4] = [
        &["--circulant", "15:1,4"],
        &["--family", "main-x:5"],
        &["--group", "Z2xZ4", "--set", "{(1,0),(0,1)}"],
        &["--edges", &k4],
    ];
    for source in sources {
        let mut args = vec!["fracext", "export", "--format", "json"];
        args.extend(source);
        let out = run_args(args);
        assert_eq!(out.code, 0, "{}", out.stdout);
        let g: Graph = parse_graph(&out.stdout).unwrap();
        assert_eq!(fracext::io::to_json(&g), out.stdout);
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run_args(["fracext", "check", "fpm", "--circulant", "7:1", "--output", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out.stdout);
    let dot = dir.path().join("c7.dot");
    let out = run_args(["fracext", "export", "--circulant", "7:1", "--format", "dot", "-o", dot.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&dot).unwrap(), out.stdout);
}

#[test]
fn census_and_explore() {
    let (code, json) = run(&["census", "--orders", "9..9"]);
    assert_eq!(code, 0);
    assert_eq!(json["result"][0]["members"].as_array().unwrap().len(), 8);
    let (code, json) = run(&["explore", "q2", "--orders", "13..13"]);
    assert_eq!(code, 0);
    let examples = json["result"]["examples"].as_array().unwrap();
    assert_eq!(examples.len(), 1);
    assert_eq!(examples[0]["connection_set"], serde_json::json!([[2], [3], [10], [11]]));
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fracext"))
}

#[test]
fn binary_exit_codes() {
    let out = binary().args(["check", "ext", "--t", "2", "--circulant", "9:1,3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    serde_json::from_slice::<Value>(&out.stdout).unwrap();
    let out = binary().args(["check", "fpm", "--circulant", "nine"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    serde_json::from_slice::<Value>(&out.stdout).unwrap();
}

#[test]
fn thread_count_from_environment() {
    let out = binary()
        .env("FRACEXT_THREADS", "3")
        .args(["verify", "f1e", "--orders", "3..8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["run"]["workers"], 3);
    for bad in ["0", "many"] {
        let out = binary()
            .env("FRACEXT_THREADS", bad)
            .args(["verify", "f1e", "--orders", "3..8"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2));
    }
    let out = binary()
        .env("FRACEXT_THREADS", "many")
        .args(["--threads", "2", "verify", "f1e", "--orders", "3..8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
