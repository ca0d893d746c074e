use std::fs;
use std::path::Path;
use std::process::Command;

use qsteiner::cli::main_with_args;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["qsteiner"];
    full.extend_from_slice(args);
    let code = main_with_args(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn dimension_pg32() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.json");
    let (code, _, err) = run(&["dimension", "--t", "1", "--k", "2", "--n", "4", "--q", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let r = read_json(&out);
    assert_eq!(r["designs"], 56);
    assert_eq!(r["certificate"]["lower_bound"], 21);
    assert_eq!(r["certificate"]["upper_bound"], 21);
    assert_eq!(r["full_family"]["mu"], serde_json::json!(["40/1", "0/1", "12/1"]));
    assert_eq!(r["full_family"]["closed_form"]["kappa"], "8/1");
    assert_eq!(r["passed"], true);
}

#[test]
fn dimension_inadmissible() {
    let (code, _, err) = run(&["dimension", "--t", "1", "--k", "2", "--n", "5", "--q", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("inadmissible") && err.contains("31"), "{err}");
}

#[test]
fn dimension_sampled_is_reproducible() {
    let args = ["dimension", "--t", "1", "--k", "2", "--n", "4", "--q", "3", "--sample", "--seed", "7"];
    let (code, first, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    let r: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(r["certificate"]["meets"], true);
    assert_eq!(r["dimension"], "91");
    assert_eq!(run(&args).1, first);
}

#[test]
fn identities_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, _, err) = run(&["identities", "--q", "2,3", "--max-n", "8", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let r = read_json(&out);
    assert_eq!(r["failed"], 0);
    assert!(r["checked"].as_u64().unwrap() > 0);

    let (code, stdout, _) = run(&["identities", "--q", "2", "--max-n", "0"]);
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&stdout).unwrap()["checked"], 0);

    let (code, stdout, _) = run(&["identities", "--q", "2", "--max-n", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("identity,parameters,lhs,rhs,rhs_alt,equal\n"));
}

#[test]
fn unwritable_output() {
    let (code, _, err) = run(&["identities", "--q", "2", "--max-n", "2", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/dir/r.json"), "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["dimension", "--k", "2", "--n", "4", "--q", "2"]).0, 2);
    assert_eq!(run(&["dimension", "--t", "1", "--k", "2", "--n", "4", "--q", "6"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn scheme_csv() {
    let (code, stdout, _) = run(&["scheme", "--n", "4", "--k", "2", "--q", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("key,value\n"));
    assert!(stdout.contains("points,35\n"));
    assert!(stdout.ends_with("passed,true\n"));
}

#[test]
fn enumerate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let spreads = dir.path().join("spreads.json");
    let (code, _, _) = run(&["enumerate", "--t", "1", "--k", "2", "--n", "4", "--q", "2", "--out", spreads.to_str().unwrap()]);
    assert_eq!(code, 0);
    let family = read_json(&spreads);
    assert_eq!(family["designs"].as_array().unwrap().len(), 56);
    let (code, _, err) = run(&["verify-design", "--designs", spreads.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");

    // a single design with one block removed
    let mut single = family.clone();
    let obj = single.as_object_mut().unwrap();
    let mut blocks = obj.remove("designs").unwrap()[0].clone();
    blocks.as_array_mut().unwrap().pop();
    obj.insert("blocks".into(), blocks);
    let broken = dir.path().join("broken.json");
    fs::write(&broken, serde_json::to_string(&single).unwrap()).unwrap();
    let (code, stdout, err) = run(&["verify-design", "--designs", broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("lies in 0 blocks"), "{err}");
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["designs"][0]["witness"]["coverage"], 0);

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{\"q\": 2, \"n\": ").unwrap();
    let (code, _, err) = run(&["verify-design", "--designs", garbage.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error"), "{err}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qsteiner");
    let ok = Command::new(bin).args(["scheme", "--n", "4", "--k", "2", "--q", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["dimension", "--t", "1", "--k", "2", "--n", "5", "--q", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
