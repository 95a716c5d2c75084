use serde_json::Value;
use std::process::{Command, Output};

const LINE: &str = r#"{"polys":[{"terms":[
    {"e_lambda":0,"e_m":0,"e_x":1,"e_y":0,"e_z":0,"coeff":"1"},
    {"e_lambda":0,"e_m":0,"e_x":0,"e_y":0,"e_z":1,"coeff":"-2"}]}],"D1":1,"D2":1,"H":0}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legendre-mm")).args(args).output().unwrap()
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "structured"]);
    let o = run(&a);
    let v = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    (o.status.code().unwrap(), v)
}

fn curve_file(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("lmm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, LINE).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn scan_reports_expected_fibers() {
    let path = curve_file("scan.json");
    let (code, v) = structured(&["scan", "--curve", &path, "--N", "4"]);
    assert_eq!(code, 0);
    let mut ls: Vec<String> = v["results"]["hits"].as_array().unwrap().iter().map(|h| h["lambda"].as_str().unwrap().to_string()).collect();
    ls.sort();
    ls.dedup();
    assert_eq!(ls, ["4", "4/3"]);
    assert_eq!(v["command"], "scan");
    assert!(v["constants_version"].is_string());
}

#[test]
fn fiber_scan_separates_zero_section() {
    let path = curve_file("fiber.json");
    let (code, v) = structured(&["scan", "--curve", &path, "--N", "4", "--lambda", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["hits"].as_array().unwrap().len(), 1);
    assert!(v["results"]["zero_section"].is_object());
    let (_, v) = structured(&["scan", "--curve", &path, "--N", "4", "--lambda", "5"]);
    assert!(v["results"]["hits"].as_array().unwrap().is_empty());
}

#[test]
fn verify_and_forged_control() {
    let path = curve_file("verify.json");
    let (code, v) = structured(&["verify", "--curve", &path, "--N", "4", "--C", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["passed"], true);
    let (code, v) = structured(&["verify", "--curve", &path, "--N", "4", "--C", "6", "--forge"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["passed"], false);
}

#[test]
fn isogeny_and_incomplete_table() {
    let (code, v) = structured(&["isogeny-check", "--lambda", "-1", "--j0", "287496"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["degrees"], serde_json::json!([2]));
    let o = run(&["isogeny-check", "--lambda", "-1", "--j0", "287496", "--maxdeg", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Phi_4"));
}

#[test]
fn bad_inputs_exit_two() {
    assert_eq!(run(&["scan", "--curve", "/nonexistent.json", "--N", "2"]).status.code(), Some(2));
    assert_eq!(run(&["height", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(run(&["height", "--lambda", "2", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "solve-log", "--A1", "1", "--A2", "-1", "--A3", "1"]).status.code(), Some(2));
}

#[test]
fn text_and_structured_agree_on_values() {
    let o = run(&["bounds", "mm-curve", "--C", "6", "--D2", "1000"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("integer: 104976000000000000"));
    let (_, v) = structured(&["bounds", "mm-curve", "--C", "6", "--D2", "1000"]);
    assert_eq!(v["results"]["bound"]["integer"], "104976000000000000");
}

#[test]
fn height_and_kernel_degree() {
    let (code, v) = structured(&["height", "--lambda", "-3", "--x", "-1", "--y", "2"]);
    assert_eq!(code, 0);
    assert!(v["results"]["canonical_height"]["value"].as_f64().unwrap().abs() < 1e-9);
    let (code, v) = structured(&["kernel-degree", "--matrix", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["kernel_degree"], "9");
}
