use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn wavicle(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavicle")).current_dir(dir).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("JSON on stdout");
    doc["report"].clone()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn close(v: &Value, expected: f64) -> bool {
    (v.as_f64().expect("number") - expected).abs() < 1e-9
}

const C2_REGULAR: &str = r#"{"group":"cyclic:2","dim":2,"matrices":{
  "e":[[[1,0],[0,0]],[[0,0],[1,0]]],
  "r":[[[0,0],[1,0]],[[1,0],[0,0]]]}}"#;

#[test]
fn group_info_dims() {
    let dir = TempDir::new().unwrap();
    let r = report(&wavicle(dir.path(), &["group-info", "--group", "cyclic:2"]));
    assert_eq!(r["order"], 2);
    assert_eq!(r["irrep_dims"], serde_json::json!([1, 1]));
    assert_eq!(r["irreps_complete"], true);

    let r = report(&wavicle(dir.path(), &["group-info", "--group", "symmetric3"]));
    assert_eq!(r["order"], 6);
    assert_eq!(r["abelian"], false);
    assert_eq!(r["irrep_dims"], serde_json::json!([1, 1, 2]));
    assert!(close(&r["reference_states"]["gram_residual"], 0.0));
}

#[test]
fn malformed_file_reports_offset() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("g.json"), "{\"elements\": [\"e\",\n  oops]}").unwrap();
    let out = wavicle(dir.path(), &["group-info", "--group", "g.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("byte 21"), "{}", stderr(&out));
}

#[test]
fn analyze_path_qubit() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("rep.json"), C2_REGULAR).unwrap();
    std::fs::write(dir.path().join("zero.json"), r#"{"ket":[[1,0],[0,0]]}"#).unwrap();
    let r = report(&wavicle(dir.path(), &["analyze", "--group", "cyclic:2", "--rep", "rep.json", "--state", "zero.json"]));
    let cap = &r["capacity"];
    assert!(close(&cap["A"], 1.0));
    assert!(close(&cap["W"], 0.0));
    assert!(close(&cap["achieved_asym"]["bits"], 1.0));
}

#[test]
fn analyze_s3_reference_state() {
    let dir = TempDir::new().unwrap();
    let e: Vec<String> = (0..6).map(|k| if k == 0 { "[1,0]" } else { "[0,0]" }.to_string()).collect();
    std::fs::write(dir.path().join("e.json"), format!("{{\"ket\":[{}]}}", e.join(","))).unwrap();
    let r = report(&wavicle(dir.path(), &["analyze", "--group", "symmetric3", "--state", "e.json"]));
    assert!(close(&r["capacity"]["A"], 6f64.log2()));
    assert!(close(&r["capacity"]["W"], 0.0));
}

#[test]
fn interferometer_plus() {
    let dir = TempDir::new().unwrap();
    let out = wavicle(dir.path(), &["scenario", "interferometer", "--state", "plus", "--out", "run.json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("run.json")).unwrap()).unwrap();
    assert!(close(&doc["report"]["fringe"]["visibility_empirical"], 1.0));
    let csv = std::fs::read_to_string(dir.path().join("run.csv")).unwrap();
    assert!(csv.starts_with("phase_rad,p_upper\n"));
    assert_eq!(csv.lines().count(), 362);
}

#[test]
fn superdense_priors() {
    let dir = TempDir::new().unwrap();
    let r = report(&wavicle(dir.path(), &["scenario", "superdense"]));
    assert!(close(&r["simulation"]["mutual_information"], 2.0));
    let r = report(&wavicle(dir.path(), &["scenario", "superdense", "--priors", "0.5,0.5,0,0"]));
    assert!(close(&r["simulation"]["mutual_information"], 1.0));
}

#[test]
fn verify_cyclic_passes() {
    let dir = TempDir::new().unwrap();
    let r = report(&wavicle(dir.path(), &["verify", "--group", "cyclic:2", "--trials", "1000"]));
    assert_eq!(r["all_pass"], true);
    assert!(r["properties"].as_array().unwrap().len() >= 4);
}

#[test]
fn verify_rejects_zero_trials() {
    let dir = TempDir::new().unwrap();
    let out = wavicle(dir.path(), &["verify", "--group", "cyclic:2", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_rep_names_witness() {
    let dir = TempDir::new().unwrap();
    let bad = C2_REGULAR.replace(r#""r":[[[0,0],[1,0]],[[1,0],[0,0]]]"#, r#""r":[[[0,0],[1,0]],[[1,0],[0,1]]]"#);
    std::fs::write(dir.path().join("bad.json"), bad).unwrap();
    let out = wavicle(dir.path(), &["verify", "--group", "cyclic:2", "--rep", "bad.json"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("`r`"), "{}", stderr(&out));
}

#[test]
fn builtin_name_shadowed_by_file_is_ambiguous() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("symmetric3"), "{}").unwrap();
    let out = wavicle(dir.path(), &["group-info", "--group", "symmetric3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("both"));
}

#[test]
fn unknown_scenario_is_usage_error() {
    let dir = TempDir::new().unwrap();
    assert_eq!(wavicle(dir.path(), &["scenario", "teleport"]).status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let args = ["scenario", "superdense", "--state", "phi+", "--priors", "0.4,0.3,0.2,0.1"];
    let a = wavicle(dir.path(), &args);
    let b = wavicle(dir.path(), &args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
