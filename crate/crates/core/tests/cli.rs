use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn permlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permlie")).args(args).output().expect("run permlie")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_permlie"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn permlie");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn examples_suite_passes_at_window_6() {
    let o = permlie(&["verify", "paper-examples", "--window", "6", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = stdout_json(&o);
    assert_eq!(v["pass"], true);
    let entries = v["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["ok"] == true));
    assert!(entries.iter().any(|e| e["expect_pass"] == false && e["report"]["pass"] == false));
}

#[test]
fn small_window_exits_3_naming_the_law() {
    let o = permlie(&["verify", "all", "--window", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Perm"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(permlie(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(permlie(&["verify", "all", "--window", "x"]).status.code(), Some(2));
    assert_eq!(permlie(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(permlie(&["export", "nope"]).status.code(), Some(2));
}

#[test]
fn ybe_suite_is_deterministic() {
    let a = permlie(&["verify", "ybe", "--seed", "7"]);
    let b = permlie(&["verify", "ybe", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["seed"], 7);
}

#[test]
fn export_ex_1p() {
    let o = permlie(&["export", "ex-1p"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["n"], 1);
    assert_eq!(v["c"], json!([[["1"]]]));
    assert_eq!(v["delta"], json!([[[0, 0, "1"]]]));
    assert_eq!(permlie(&["export", "ex-1p"]).stdout, o.stdout);
}

#[test]
fn export_manin_double() {
    let v = stdout_json(&permlie(&["export", "double/ex-1p"]));
    assert_eq!(v["n"], 2);
    assert_eq!(v["subspace"], json!([0, 1]));
    assert_eq!(v["kappa"], json!([["0", "-1"], ["1", "0"]]));
    // e·e* = e*, e*·e = e
    assert_eq!(v["c"][0][1], json!(["0", "1"]));
    assert_eq!(v["c"][1][0], json!(["1", "0"]));
}

#[test]
fn export_symbolic_deltas() {
    let t = stdout_json(&permlie(&["export", "delta-t/ex-1p"]));
    assert_eq!(t["params"], json!(["i"]));
    let coeffs: Vec<&str> = t["templates"].as_array().unwrap().iter().map(|x| x["coeff"].as_str().unwrap()).collect();
    assert_eq!(coeffs.len(), 2);
    assert!(coeffs.iter().all(|c| *c == "i" || *c == "-i"), "{coeffs:?}");
    let s = stdout_json(&permlie(&["export", "delta-s/ex-1p"]));
    let tpl = &s["templates"][0];
    assert_eq!(tpl["vars"], json!(["j"]));
    assert_eq!(tpl["coeff"], "-1+i+2*j");
    assert_eq!(tpl["keys"][0]["r"], json!({"t": "Ess", "i": "-j"}));
    assert_eq!(tpl["keys"][1]["r"], json!({"t": "Ess", "i": "i+j-1"}));
}

#[test]
fn residual_of_catalog_solution_is_zero() {
    let exported = permlie(&["export", "tensor/r-semidirect"]);
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("r.json");
    std::fs::write(&input, &exported.stdout).unwrap();
    let o = permlie(&["residual", "perm-ybe", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["zero"], true);
    assert_eq!(v["residual"], json!([]));
    let o = permlie(&["residual", "cybe", "--input", input.to_str().unwrap(), "--window", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(stdout_json(&o)["law"], "CYBE");
}

#[test]
fn residual_of_empty_tensor_is_zero() {
    let o = with_stdin(&["residual", "perm-ybe", "--input", "-"], r#"{"algebra": "ex-nil2", "r": []}"#);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["residual"], json!([]));
}

#[test]
fn crafted_non_solution_is_printed_canonically() {
    let a = with_stdin(&["residual", "perm-ybe", "--input", "-"], r#"{"algebra": "ex-nil2", "r": [[0, 0, "1"]]}"#);
    assert_eq!(a.status.code(), Some(1));
    let v = stdout_json(&a);
    assert_eq!(v["zero"], false);
    assert!(!v["residual"].as_array().unwrap().is_empty());
    let keyed = r#"{"algebra": "ex-nil2", "r": [[{"t":"Fin","space":"ex-nil2","i":0}, {"t":"Fin","space":"ex-nil2","i":0}, "1"]]}"#;
    let b = with_stdin(&["residual", "perm-ybe", "--input", "-"], keyed);
    assert_eq!(a.stdout, b.stdout);
    let text = with_stdin(&["residual", "perm-ybe", "--input", "-", "--format", "text"], keyed);
    assert!(String::from_utf8_lossy(&text.stdout).contains('⊗'));
}

#[test]
fn residual_parse_errors_report_position() {
    let o = with_stdin(&["residual", "s-eq", "--input", "-"], "{\n  \"algebra\": \"pl-1\",\n  \"r\": [[0 0]]\n}");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
    let o = with_stdin(&["residual", "s-eq", "--input", "-"], r#"{"algebra": "nope", "r": []}"#);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_and_config_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let cfg = dir.path().join("permlie.toml");
    std::fs::write(&cfg, format!("window = 2\nformat = \"text\"\nout = {:?}\n", out.to_str().unwrap())).unwrap();
    // the config window is too small, the flag wins
    let o = permlie(&["verify", "doubles", "--config", cfg.to_str().unwrap(), "--window", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("suite doubles (N=4"), "{text}");
}
