use std::process::{Command, Output};

use serde_json::Value;
use surface_lie::charring::{CharTerm, PtTerm};
use surface_lie::cli::{laurent_json, power_trace_json};
use surface_lie::{PowerTracePoly, SymCharacter};

fn surface_lie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surface-lie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn dims_csv_genus_two() {
    let o = surface_lie(&[
        "dims",
        "--genus",
        "2",
        "--max-degree",
        "6",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "degree,dimension\n1,4\n2,5\n3,16\n4,45\n5,144\n6,440\n"
    );
}

#[test]
fn dims_torus() {
    let o = surface_lie(&[
        "dims",
        "--genus",
        "1",
        "--max-degree",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims: Vec<&str> = v["dimensions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dimension"].as_str().unwrap())
        .collect();
    assert_eq!(dims, ["2", "0", "0", "0", "0"]);
}

#[test]
fn verify_all_exits_zero() {
    let o = surface_lie(&[
        "verify", "all", "--genus", "2", "--order", "8", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    let names: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["identity"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), 3);
}

#[test]
fn laurent_json_round_trips() {
    let o = surface_lie(&[
        "character",
        "--genus",
        "2",
        "--degree",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let terms: Vec<CharTerm> = serde_json::from_value(v["terms"].clone()).unwrap();
    let chi = SymCharacter::from_serial(2, &terms).unwrap();
    let again = serde_json::to_string_pretty(&laurent_json(4, &chi)).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn power_trace_json_round_trips() {
    let o = surface_lie(&[
        "character",
        "--genus",
        "3",
        "--degree",
        "6",
        "--rep",
        "power-trace",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let terms: Vec<PtTerm> = serde_json::from_value(v["terms"].clone()).unwrap();
    let p = PowerTracePoly::from_serial(3, &terms).unwrap();
    let again = serde_json::to_string_pretty(&power_trace_json(6, &p)).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "decompose",
        "--genus",
        "2",
        "--degree",
        "6",
        "--format",
        "json",
    ];
    assert_eq!(stdout(&surface_lie(&args)), stdout(&surface_lie(&args)));
}

#[test]
fn oracle_with_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    // transvection a_1 -> a_1, b_1 -> b_1 + a_1 combined with a swap on (a_2, b_2)
    std::fs::write(
        &good,
        r#"{"genus": 2, "matrix": [[1,0,1,0],[0,0,0,-1],[0,0,1,0],[0,1,0,0]]}"#,
    )
    .unwrap();
    let out = dir.path().join("report.csv");
    let o = surface_lie(&[
        "oracle",
        "--genus",
        "2",
        "--max-degree",
        "4",
        "--matrix",
        good.to_str().unwrap(),
        "--format",
        "csv",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        csv,
        "degree,formula_dimension,oracle_dimension,matrices,pass\n\
         1,4,4,2,1\n2,5,5,2,1\n3,16,16,2,1\n4,45,45,2,1\n"
    );
}

#[test]
fn non_symplectic_matrix_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"genus": 1, "matrix": [[1, 0], [0, 2]]}"#).unwrap();
    let o = surface_lie(&[
        "oracle",
        "--genus",
        "1",
        "--max-degree",
        "2",
        "--matrix",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let msg = stderr(&o);
    assert!(msg.contains("M^T J M - J has entry"), "{msg}");
    assert!(stdout(&o).is_empty());
}

#[test]
fn malformed_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"genus": 1, "matrix": [[1, 0.5], [0, 1]]}"#).unwrap();
    let o = surface_lie(&[
        "oracle",
        "--genus",
        "1",
        "--max-degree",
        "2",
        "--matrix",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("malformed matrix file"));
}

#[test]
fn usage_errors() {
    for args in [
        &["dims", "--genus", "x", "--max-degree", "3"][..],
        &["dims", "--genus", "2"][..],
        &["frobnicate"][..],
        &["verify", "everything", "--genus", "2", "--order", "3"][..],
        &[
            "character",
            "--genus",
            "2",
            "--degree",
            "2",
            "--rep",
            "monomial",
        ][..],
    ] {
        let o = surface_lie(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
        assert!(stdout(&o).is_empty());
    }
}

#[test]
fn budget_exceeded_suggests_smaller_degree() {
    let o = surface_lie(&[
        "oracle",
        "--genus",
        "2",
        "--max-degree",
        "6",
        "--budget",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let msg = stderr(&o);
    assert!(
        msg.contains("4096") && msg.contains("smaller degree"),
        "{msg}"
    );
}

#[test]
fn a_coeff_plain() {
    let o = surface_lie(&[
        "a-coeff",
        "--genus",
        "1",
        "--degree",
        "2",
        "--method",
        "recurrence",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/2*q1^2 - 1\n");
}
