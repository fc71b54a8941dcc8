use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use frobsig::instance::parse_instance;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn frobsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobsig")).args(args).output().unwrap()
}

fn write_instance(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn value(row: &Value) -> (String, String) {
    (row["value"]["num"].as_str().unwrap().into(), row["value"]["den"].as_str().unwrap().into())
}

#[test]
fn cusp_srel_json() {
    let cusp = corpus().join("cusp.frob");
    let out = frobsig(&["srel", cusp.to_str().unwrap(), "--e-max", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert_eq!(value(row), ("0".into(), "1".into()));
        assert_eq!(row["paths_agree"], Value::Bool(true));
    }
    assert_eq!(report["dimension"]["source"], "computed");
    assert!(report.get("timestamp").is_none());
}

#[test]
fn regular_hk_lengths() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "plane.frob", "field GF(2)\nring x y\nideal m = x, y\ntask hk m e_max=3\n");
    let out = frobsig(&["run", &path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let lengths: Vec<u64> = json(&out)["hk"].as_array().unwrap().iter().map(|h| h["length"].as_u64().unwrap()).collect();
    assert_eq!(lengths, [1, 4, 16, 64]);
}

#[test]
fn dimension_override_is_recorded() {
    let cusp = corpus().join("cusp.frob");
    let out = frobsig(&["srel", cusp.to_str().unwrap(), "--e-max", "1", "--dim", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["dimension"]["value"], 2);
    assert_eq!(report["dimension"]["source"], "user");
}

#[test]
fn validation_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let not_primary = write_instance(dir.path(), "a.frob", "field GF(2)\nring x y\nideal I0 = x\ntask srel I0\n");
    let out = frobsig(&["run", &not_primary]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not zero-dimensional"));

    let two_points = write_instance(dir.path(), "d.frob", "field GF(2)\nring x y\nideal I0 = x^2 + x, y\ntask srel I0\n");
    let out = frobsig(&["run", &two_points]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not primary to the origin"));

    let unknown_key = write_instance(dir.path(), "b.frob", "field GF(2)\nring x y\nideal I0 = x, y\ntask srel I0 colour=red\n");
    let out = frobsig(&["run", &unknown_key]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4, column 14"));

    let undeclared = write_instance(dir.path(), "c.frob", "field GF(2)\nring x y\nideal I0 = x, y\ntask srel J\n");
    assert_eq!(frobsig(&["run", &undeclared]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_with_three() {
    let fat = corpus().join("fat_point_socle4.frob");
    let out = frobsig(&["run", fat.to_str().unwrap(), "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn first_failure_decides_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    write_instance(dir.path(), "a_budget.frob", &fs::read_to_string(corpus().join("fat_point_socle4.frob")).unwrap());
    write_instance(dir.path(), "b_invalid.frob", "field GF(2)\nring x y\nideal I0 = x\ntask srel I0\n");
    let out = frobsig(&["run", dir.path().to_str().unwrap(), "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_corpus_passes() {
    let out = frobsig(&["verify", corpus().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let table = String::from_utf8_lossy(&out.stdout);
    assert!(!table.contains("FAIL"));
    assert!(table.contains("dual-path e=1"));
}

#[test]
fn parallel_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("one.json"), dir.path().join("four.json"));
    for (file, parallel) in [(&a, "1"), (&b, "4")] {
        let out = frobsig(&[
            "oracle-diff",
            corpus().to_str().unwrap(),
            "--e-max",
            "1",
            "--parallel",
            parallel,
            "--out",
            file.to_str().unwrap(),
            "--format",
            "json",
        ]);
        // The corpus contains a function-field instance, which oracle-diff
        // handles through sampled lines.
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("cone.csv");
    let cone = corpus().join("quadric_cone.frob");
    let out = frobsig(&["run", cone.to_str().unwrap(), "--format", "csv", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = fs::read_to_string(out_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "instance,task,e,num,den,value_decimal,candidate_count,paths_agree,C_emp_num,C_emp_den,warnings"
    );
    assert!(lines[1].starts_with("quadric_cone,srel,1,5,9,0.555555555556,1,true,40,243,"));
    assert!(lines[3].starts_with("quadric_cone,srel,3,365,729,"));
}

#[test]
fn gamma_subcommand_and_empty_gamma() {
    let gamma = corpus().join("gamma_cusp.frob");
    let path = gamma.to_str().unwrap();
    let with_t = json(&frobsig(&["gamma", path, "--Gamma", "t", "--levels", "0,1,2", "--e", "1", "--format", "json"]));
    let levels = with_t["gamma"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 3);
    assert_eq!(levels[2]["field"], "GF(2)(t_r4)");
    assert_eq!(with_t["gamma"]["monotone"], Value::Bool(true));

    let empty = json(&frobsig(&["gamma", path, "--Gamma", "", "--levels", "0", "--format", "json"]));
    assert_eq!(empty["gamma"]["levels"][0], levels[0]);
}

#[test]
fn emit_gb_dumps_bases() {
    let cusp = corpus().join("cusp.frob");
    let report = json(&frobsig(&["srel", cusp.to_str().unwrap(), "--e-max", "1", "--emit-gb", "--format", "json"]));
    let labels: Vec<&str> = report["groebner_bases"].as_array().unwrap().iter().map(|g| g["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["J", "J + I0", "J + I0^[p^1]"]);
}

#[test]
fn corpus_instances_round_trip() {
    for entry in fs::read_dir(corpus()).unwrap() {
        let path = entry.unwrap().path();
        let inst = parse_instance(&fs::read_to_string(&path).unwrap()).unwrap();
        let printed = inst.to_string();
        assert_eq!(parse_instance(&printed).unwrap(), inst, "{}", path.display());
        assert_eq!(parse_instance(&printed).unwrap().to_string(), printed);
    }
}
