use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn qai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qai"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = qai(args);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with('\n'), "output not newline-terminated");
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

fn expect_keys(value: &Value, keys: &[&str], context: &str) {
    let obj = value.as_object().unwrap_or_else(|| panic!("{context}: not an object"));
    for key in keys {
        assert!(obj.contains_key(*key), "{context}: missing {key}");
    }
}

/// Envelope shape shared by every subcommand, plus the documented payload keys.
fn check_schema(envelope: &Value, subcommand: &str) {
    let obj = envelope.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        ["config", "duration_seconds", "payload", "status", "subcommand", "tool", "version"]
    );
    assert_eq!(envelope["tool"], "qai");
    assert_eq!(envelope["subcommand"], subcommand);
    assert!(envelope["version"].is_string());
    assert!(envelope["duration_seconds"].as_f64().unwrap() >= 0.0);
    assert!(matches!(envelope["status"].as_str(), Some("ok" | "failure")));
    assert!(envelope["config"]["seed"].is_u64(), "seed not echoed");
    let payload = &envelope["payload"];
    let documented: &[&str] = match subcommand {
        "interfere-demo" => &["detectors", "p0"],
        "dj" => &["n", "function", "verdict", "outcome", "p_zero", "solution_count"],
        "grover" => &["n", "iterations", "success_probability", "curve", "outcome", "value", "is_solution"],
        "qft" => &["n", "input", "gate_count", "support"],
        "shor" => &["modulus", "n", "status", "y", "factors", "period_estimate", "attempts"],
        "hogg" => &["problem", "runs"],
        "hth" => &["problem", "policy", "mixer", "steps", "curve", "p_solution", "baseline_uniform"],
        "qam" => &["status", "query", "iterations", "success_probability", "curve", "outcome", "patterns"],
        "qga" => &["best_tour", "best_length", "best_generation", "generations", "stop_reason", "log"],
        other => panic!("unknown subcommand {other}"),
    };
    expect_keys(payload, documented, subcommand);
    if let Some(curve) = payload.get("curve") {
        for point in curve.as_array().unwrap() {
            let pair = point.as_array().unwrap();
            assert_eq!(pair.len(), 2);
            assert!(pair[0].is_u64());
            let p = pair[1].as_f64().unwrap();
            assert!((-1e-12..=1.0 + 1e-12).contains(&p));
        }
    }
}

fn every_example_run() -> Vec<(&'static str, Vec<String>)> {
    let v = |items: &[&str]| items.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        ("interfere-demo", v(&["--trials", "2000"])),
        ("interfere-demo", v(&["--block-path", "--trials", "2000"])),
        ("dj", v(&["--n", "4", "--function", "random-balanced"])),
        ("grover", v(&["--n", "4", "--marked", "13", "--ancilla"])),
        ("qft", v(&["--n", "4", "--period", "4"])),
        ("shor", v(&["--m", "21"])),
        ("hogg", vec!["--input".into(), data("triangle.graph")]),
        ("hogg", vec!["--input".into(), data("path4.graph")]),
        ("hogg", vec!["--input".into(), data("sample.csp")]),
        ("hth", vec!["--input".into(), data("path4.graph")]),
        ("hth", vec!["--input".into(), data("sample.csp"), "--policy".into(), "conflict".into()]),
        ("qam", vec!["--patterns".into(), data("patterns.txt"), "--query".into(), "1?".into()]),
        ("qga", vec!["--input".into(), data("circle6.tsp")]),
        ("qga", vec!["--input".into(), data("cities9.tsp"), "--selection".into(), "rank-space".into()]),
    ]
}

#[test]
fn example_files_round_trip_through_the_schema() {
    for (sub, rest) in every_example_run() {
        let mut args = vec![sub];
        args.extend(rest.iter().map(String::as_str));
        let (code, value) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        check_schema(&value, sub);
    }
}

#[test]
fn data_directory_is_fully_covered() {
    let runs = every_example_run();
    let used: Vec<String> = runs.iter().flat_map(|(_, a)| a.clone()).collect();
    for entry in std::fs::read_dir(data("")).unwrap() {
        let path = entry.unwrap().path().to_string_lossy().into_owned();
        assert!(used.contains(&path), "{path} is not exercised");
    }
}

#[test]
fn shor_fifteen_reports_three_and_five() {
    let (code, value) = json(&["shor", "--m", "15", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(value["payload"]["factors"], serde_json::json!([3, 5]));
    assert_eq!(value["status"], "ok");
    assert_eq!(value["config"]["seed"], 7);
}

#[test]
fn grover_payload_shape() {
    let (_, value) = json(&["grover", "--n", "4", "--marked", "13", "--seed", "1"]);
    let payload = &value["payload"];
    assert_eq!(payload["curve"].as_array().unwrap().len(), 4);
    assert!((payload["success_probability"].as_f64().unwrap() - 0.961319).abs() < 1e-6);
    assert_eq!(payload["outcome"].as_str().unwrap().len(), 4);
}

#[test]
fn triangle_graph_has_nine_nogoods() {
    let (_, value) = json(&["hogg", "--input", &data("triangle.graph")]);
    let problem = &value["payload"]["problem"];
    assert_eq!(problem["ground_size"], 9);
    assert_eq!(problem["nogoods"], 9);
    assert_eq!(problem["solution_count"], 6);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qai(&["bogus"]).status.code(), Some(2));
    assert_eq!(qai(&["grover", "--n", "3"]).status.code(), Some(2));
    assert_eq!(qai(&["shor", "--m", "16"]).status.code(), Some(2));
    assert_eq!(qai(&["dj", "--format", "csv"]).status.code(), Some(2));
    let out = qai(&["hogg", "--input", "/nonexistent/file"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn parse_errors_name_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "graph 3 2\nedge 0 x\n").unwrap();
    let out = qai(&["hogg", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 8"), "{err}");

    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "# nothing\n").unwrap();
    let out = qai(&["qam", "--patterns", empty.to_str().unwrap(), "--query", "1?"]);
    assert_eq!(out.status.code(), Some(2));

    let dup = dir.path().join("dup.tsp");
    std::fs::write(&dup, "a 0 0\nb 1 0\na 2 2\n").unwrap();
    let out = qai(&["qga", "--input", dup.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate"));
}

#[test]
fn algorithm_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let patterns = dir.path().join("p.txt");
    std::fs::write(&patterns, "01\n").unwrap();
    let (code, value) = json(&["qam", "--patterns", patterns.to_str().unwrap(), "--query", "1?"]);
    assert_eq!(code, 1);
    assert_eq!(value["status"], "failure");
    assert_eq!(value["payload"]["status"], "no_match");

    let (code, value) = json(&["shor", "--m", "33", "--max-attempts", "1", "--seed", "1"]);
    if value["payload"]["status"] == "failed" {
        assert_eq!(code, 1);
        assert_eq!(value["status"], "failure");
    } else {
        assert_eq!(code, 0);
    }
}

#[test]
fn csv_has_header_and_six_decimals() {
    let out = qai(&["grover", "--n", "2", "--marked", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "iteration,success_probability\n0,0.250000\n1,1.000000\n");

    let out = qai(&["qga", "--input", &data("circle6.tsp"), "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("generation,best_length,mean_length\n"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = qai(&["qft", "--n", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let value: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    check_schema(&value, "qft");
    assert_eq!(value["payload"]["gate_count"], 6);
}

#[test]
fn help_exits_zero() {
    assert_eq!(qai(&["--help"]).status.code(), Some(0));
    assert_eq!(qai(&["qga", "--help"]).status.code(), Some(0));
}
