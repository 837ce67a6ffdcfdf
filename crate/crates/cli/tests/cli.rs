use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mgltg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgltg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn rational(v: &Value) -> (i64, i64) {
    (v["num"].as_i64().unwrap(), v["den"].as_i64().unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_majority() {
    let report = json(&mgltg(&["analyze", "--input", "00010111"]));
    assert_eq!(report["is_ltg"], true);
    assert_eq!(rational(&report["margin"]), (1, 3));
    assert_eq!(rational(&report["optimal_probability"]), (2, 3));
    assert_eq!(report["integer_weight"]["weight"], 15);
    assert_eq!(rational(&report["integer_weight"]["upper_bound"]), (24, 1));
    let hex = json(&mgltg(&["analyze", "--input", "0x17"]));
    assert_eq!(hex, report);
}

#[test]
fn analyze_xor_and_constant() {
    let xor = json(&mgltg(&["analyze", "--input", "0110"]));
    assert_eq!(xor["is_ltg"], false);
    assert_eq!(xor["certificate"]["input_weights"].as_array().unwrap().len(), 4);
    let zero = json(&mgltg(&["analyze", "--input", "0000"]));
    assert_eq!(zero["constant"], true);
    assert_eq!(rational(&zero["margin"]), (1, 1));
    assert_eq!(rational(&zero["optimal_probability"]), (1, 1));
}

#[test]
fn exit_codes() {
    assert_eq!(mgltg(&["analyze", "--input", "011"]).status.code(), Some(2));
    assert_eq!(mgltg(&["synthesize", "--input", "0110"]).status.code(), Some(2));
    assert_eq!(mgltg(&["census", "-n", "5"]).status.code(), Some(3));
    let wide = "0".repeat(1 << 13);
    assert_eq!(mgltg(&["analyze", "--input", &wide]).status.code(), Some(3));
    assert_eq!(mgltg(&["verify", "--level", "medium"]).status.code(), Some(2));
    assert_eq!(mgltg(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn synthesize_then_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("maj.json");
    let out = mgltg(&["synthesize", "--input", "00010111", "--output", path_str(&circuit)]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&fs::read_to_string(&circuit).unwrap()).unwrap();
    assert_eq!(doc["num_qubits"], 4);
    assert!((doc["metadata"]["promised_probability"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);

    let report = json(&mgltg(&["simulate", "--circuit", path_str(&circuit), "--input", "0010"]));
    for backend in ["rotation", "dense"] {
        let p0 = report[backend]["p0"].as_f64().unwrap();
        assert!((p0 - 2.0 / 3.0).abs() < 1e-9, "{backend}: {p0}");
    }
    assert!(report["discrepancy"].as_f64().unwrap() < 1e-9);
}

#[test]
fn synthesize_from_representation_file() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.json");
    fs::write(&rep, r#"{"w": [0.0, 2.0, 0.0], "theta": 0.0}"#).unwrap();
    let doc = json(&mgltg(&["synthesize", "--input", path_str(&rep)]));
    assert_eq!(doc["metadata"]["promised_probability"], 1.0);
    assert_eq!(doc["metadata"]["representation"]["w"][1], 1.0);
}

#[test]
fn simulate_small_circuits() {
    let dir = tempfile::tempdir().unwrap();
    let fswap = dir.path().join("fswap.json");
    fs::write(&fswap, r#"{"num_qubits": 2, "gates": [{"kind": "fswap", "qubit": 1}]}"#).unwrap();
    let report = json(&mgltg(&["simulate", "--circuit", path_str(&fswap), "--input", "10"]));
    assert_eq!(report["dense"]["p0"], 1.0);
    assert_eq!(report["rotation"]["p0"], 1.0);

    let empty = dir.path().join("empty.json");
    fs::write(&empty, r#"{"num_qubits": 3, "gates": []}"#).unwrap();
    let report = json(&mgltg(&["simulate", "--circuit", path_str(&empty), "--input", "0", "--backend", "dense"]));
    assert_eq!(report["dense"]["p0"], 1.0);
    assert!(report.get("rotation").is_none());

    let corrupt = dir.path().join("corrupt.json");
    fs::write(&corrupt, r#"{"num_qubits": 2, "gates": [{"kind": "#).unwrap();
    let out = mgltg(&["simulate", "--circuit", path_str(&corrupt), "--input", "00"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wms_compile_and_run() {
    let dir = tempfile::tempdir().unwrap();
    let program = dir.path().join("p.json");
    assert!(mgltg(&["wms", "compile", "--input", "00010111", "--output", path_str(&program)])
        .status
        .success());
    let args = ["wms", "run", "--program", path_str(&program), "--input", "001", "--samples", "100000", "--seed", "7"];
    let first = mgltg(&args);
    let report = json(&first);
    let exact = report["exact_probability_zero"].as_f64().unwrap();
    let freq = report["empirical_frequency_zero"].as_f64().unwrap();
    let sigma = report["standard_error"].as_f64().unwrap();
    assert!((exact - 2.0 / 3.0).abs() < 1e-12);
    assert!((freq - exact).abs() <= 3.0 * sigma);
    assert_eq!(mgltg(&args).stdout, first.stdout);
}

#[test]
fn wms_check_agrees() {
    let report = json(&mgltg(&["wms", "check", "--input", "00010111"]));
    assert!(report["max_discrepancy"].as_f64().unwrap() <= 1e-8);
    assert_eq!(report["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn census_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("census.csv");
    assert!(mgltg(&["census", "-n", "2", "--output", path_str(&csv)]).status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "table,is_ltg,margin_num,margin_den,dep_count");
    assert_eq!(lines.len(), 17);
    assert!(lines.contains(&"0110,false,,,2"));
    assert!(lines.contains(&"0001,true,1,3,2"));
    assert_eq!(lines.iter().filter(|l| l.contains(",true,")).count(), 14);
}

#[test]
fn verify_fast_is_deterministic() {
    let first = mgltg(&["verify", "--level", "fast", "--seed", "3"]);
    let report = json(&first);
    assert_eq!(report["passed"], true);
    assert_eq!(report["checks"].as_array().unwrap().len(), 8);
    assert_eq!(mgltg(&["verify", "--level", "fast", "--seed", "3"]).stdout, first.stdout);
}
