use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn e510(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e510")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn certificates(dir: &Path) -> Vec<serde_json::Value> {
    let mut files: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files.iter().map(|f| serde_json::from_str(&fs::read_to_string(f).unwrap()).unwrap()).collect()
}

#[test]
fn omega_expansions() {
    let o = e510(&["omega", "21,13,45,25"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "d12 d13 d25 d45 - 1/2 ∂2 d12 d25 - 1/2 ∂3 d13 d25 - 1/2 ∂4 d12 d45 + 1/4 ∂3 ∂4");
    assert_eq!(stdout(&e510(&["omega", "12"])).trim(), "d12");
    assert_eq!(stdout(&e510(&["omega", "12,12"])).trim(), "0");
    let latex = stdout(&e510(&["--latex", "omega", "21,13,45,25"]));
    assert!(latex.contains(r"\frac{1}{4} \partial_{3} \partial_{4}"));
    let j = json(&e510(&["omega", "12,34", "--json"]));
    assert!(j.is_array());
}

#[test]
fn malformed_input_is_a_usage_error() {
    assert_eq!(e510(&["omega", "1x"]).status.code(), Some(1));
    assert_eq!(e510(&["singular", "--mu", "1,2", "--degree", "1"]).status.code(), Some(1));
    assert_eq!(e510(&["singular", "--mu", "0,0,0,0", "--degree", "0"]).status.code(), Some(1));
    assert_eq!(e510(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(e510(&["--help"]).status.code(), Some(0));
}

#[test]
fn dimensions() {
    assert_eq!(stdout(&e510(&["dim-u", "--degree", "2"])).trim(), "50");
    assert_eq!(json(&e510(&["dim-u", "--degree", "3", "--json"]))["dimension"], 170);
    let j = json(&e510(&["irrep", "--lambda", "1,1,0,0", "--json"]));
    assert_eq!(j["dimension"], 40);
    assert_eq!(j["weyl_dimension"], 40);
}

#[test]
fn singular_writes_verifiable_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let o = e510(&["singular", "--mu", "1,0,0,0", "--degree", "1", "--out", dir.path().to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let certs = certificates(dir.path());
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["family"], "nabla_A");
    assert_eq!(certs[0]["lambda"], serde_json::json!([1, 1, 0, 0]));
    assert_eq!(certs[0]["checks"]["full_l1"], true);
    assert_eq!(certs[0]["checks"]["equations"], true);

    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    let o = e510(&["verify", files[0].to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(": ok"));
}

#[test]
fn degree_three_certificate() {
    let o = e510(&["singular", "--mu", "0,0,1,1", "--degree", "3", "--json"]);
    assert!(o.status.success());
    let certs = json(&o);
    assert_eq!(certs.as_array().unwrap().len(), 1);
    assert_eq!(certs[0]["family"], "nabla_CBA");
    assert_eq!(certs[0]["lambda"], serde_json::json!([1, 1, 0, 0]));
    let lead = &certs[0]["leading_term"];
    assert_eq!(lead.as_array().unwrap().len(), 1);
}

#[test]
fn tampered_certificates_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let o = e510(&["singular", "--mu", "1,1,0,0", "--degree", "1", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut cert: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(cert["lambda"], serde_json::json!([1, 2, 0, 0]));
    let last = cert["vector"].as_array().unwrap().len() - 1;
    cert["vector"][last]["fcoeffs"][0]["coeff"] = "123/7".into();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, serde_json::to_string(&cert).unwrap()).unwrap();
    assert_eq!(e510(&["verify", bad.to_str().unwrap()]).status.code(), Some(3));

    fs::write(&bad, "{\"mu\": 3}").unwrap();
    assert_eq!(e510(&["verify", bad.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn classification_sweeps() {
    let j = json(&e510(&["classify", "--degree", "1", "--max-entry", "0", "--json"]));
    let rows = j.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["mu"], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(rows[0]["lambda"], serde_json::json!([0, 1, 0, 0]));
    assert_eq!(rows[0]["family"], "nabla_A");

    let o = e510(&["classify", "--degree", "2", "--max-entry", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 hit(s), 0 anomalies"));

    let dir = tempfile::tempdir().unwrap();
    let o = e510(&["classify", "--degree", "3", "--max-entry", "1", "--out", dir.path().to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let certs = certificates(dir.path());
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["family"], "nabla_CBA");
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let a = e510(&["--threads", "1", "classify", "--degree", "1", "--max-entry", "1", "--json"]);
    let b = e510(&["--threads", "3", "classify", "--degree", "1", "--max-entry", "1", "--json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn compose_and_dual() {
    let j = json(&e510(&["compose", "--lambda", "1,1,0,0", "--via", "1,0,0,0", "--mu", "0,0,0,1", "--json"]));
    assert_eq!(j["zero"], false);
    assert_eq!(j["degree"], 2);
    assert_eq!(j["check_morphism"], true);
    assert_eq!(j["equations"], true);

    let j = json(&e510(&["compose", "--lambda", "0,2,0,0", "--via", "0,1,0,0", "--mu", "0,0,0,0", "--json"]));
    assert_eq!(j["zero"], true);

    let j = json(&e510(&["dual", "--lambda", "0,1,0,0", "--mu", "0,0,0,0", "--degree", "1", "--json"]));
    assert_eq!(j["lambda"], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(j["mu"], serde_json::json!([0, 0, 1, 0]));
    assert_eq!(j["check_morphism"], true);

    let o = e510(&["dual", "--lambda", "1,0,0,0", "--mu", "0,0,0,0", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(1));
}
