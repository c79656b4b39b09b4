use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn contour(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contour"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = contour(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (code, v)
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_string_lossy().into_owned()
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings_ms");
    v
}

#[test]
fn analyze_generic_preset() {
    let (code, v) = report(&["analyze", "--preset", "generic-2-4"]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["uniform"], true);
    assert_eq!(r["connected"], true);
    assert_eq!(r["polytope_dim"], 3);
}

#[test]
fn analyze_nine_lines() {
    let (code, v) = report(&["analyze", "--preset", "nine-lines-3-9"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["general_position"], false);
    let deps = v["results"]["dependent_subsets"].as_array().unwrap();
    assert!(deps.contains(&json!([1, 2, 7])));
    assert!(deps.contains(&json!([1, 4, 5])));
}

#[test]
fn malformed_json_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"r\": 2,\n \"n\": 4, \"forms\": [[1, 0],, ]}").unwrap();
    let out = contour(&["analyze", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn subdivide_heights() {
    let dir = tempfile::tempdir().unwrap();
    let keys = ["1,2", "1,3", "1,4", "2,3", "2,4", "3,4"];
    let constant: Value = keys
        .iter()
        .map(|k| (k.to_string(), json!(0)))
        .collect::<serde_json::Map<_, _>>()
        .into();
    let f = write(dir.path(), "flat.json", &constant);
    let (code, v) = report(&["subdivide", "--r", "2", "--n", "4", &f]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["cells"], 1);

    let (code, v) = report(&["subdivide", "--preset", "split-2-4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["cells"], 2);
    assert_eq!(v["results"]["matroidal"], true);

    let generic: Value = keys
        .iter()
        .zip([0, 3, 1, 7, 2, 6])
        .map(|(k, h)| (k.to_string(), json!(h)))
        .collect::<serde_json::Map<_, _>>()
        .into();
    let f = write(dir.path(), "generic.json", &generic);
    let (code, v) = report(&["subdivide", "--r", "2", "--n", "4", &f]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["matroidal"], false);
}

#[test]
fn cohomology_examples() {
    let (code, v) = report(&["cohomology", "--preset", "trivial-2-4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["cohomology"]["h_omega"], json!([3, 0]));
    let (_, v) = report(&["cohomology", "--preset", "trivial-3-6"]);
    assert_eq!(v["results"]["cohomology"]["h_omega"], json!([10, 0, 0]));

    let dir = tempfile::tempdir().unwrap();
    let split = json!({
        "r": 2, "n": 5,
        "cells": [
            [[1,3],[1,4],[1,5],[2,3],[2,4],[2,5],[3,4],[3,5],[4,5]],
            [[1,2],[1,3],[1,4],[1,5],[2,3],[2,4],[2,5]]
        ]
    });
    let f = write(dir.path(), "split.json", &split);
    let (code, v) = report(&["cohomology", &f]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["cohomology"]["h_omega"], json!([4, 0]));
}

#[test]
fn validate_flags_missing_cell() {
    let dir = tempfile::tempdir().unwrap();
    let half = json!({"r": 2, "n": 4, "cells": [[[1,2],[1,3],[1,4],[2,3],[2,4]]]});
    let f = write(dir.path(), "half.json", &half);
    let (code, v) = report(&["validate", &f]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
}

#[test]
fn white_uniform() {
    let (code, v) = report(&["white", "--r", "2", "--n", "4", "--dmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["failures"], json!([]));
}

#[test]
fn strata_trivial() {
    let (code, v) = report(&["strata", "--preset", "trivial-2-4"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["results"]["poset"]["elements"].as_array().unwrap().len(),
        5
    );
    let dot = contour(&["strata", "--preset", "trivial-2-4", "--dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("digraph"));
}

#[test]
fn residues_generic_three_five() {
    let dir = tempfile::tempdir().unwrap();
    let a = json!({"r": 3, "n": 5, "forms": [[1,0,0],[0,1,0],[0,0,1],[1,1,1],[1,2,5]]});
    let f = write(dir.path(), "a.json", &a);
    let (code, v) = report(&["residues", &f]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["residues"]["passed"], true);
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "hilbert",
        "--preset",
        "split-2-4",
        "--dmax",
        "2",
        "--seed",
        "99",
    ];
    let (_, a) = report(&args);
    let (_, b) = report(&args);
    assert_eq!(without_timings(a.clone()), without_timings(b));
    assert_eq!(a["seed"], 99);
    let (_, c) = report(&[
        "hilbert",
        "--preset",
        "split-2-4",
        "--dmax",
        "2",
        "--seed",
        "100",
    ]);
    assert_ne!(a["inputs_digest"], c["inputs_digest"]);
}

#[test]
fn hilbert_with_gluing_file() {
    let (_, first) = report(&["hilbert", "--preset", "split-2-4", "--dmax", "2"]);
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "t.json", &first["results"]["gluing"]);
    let (code, v) = report(&[
        "hilbert",
        "--preset",
        "split-2-4",
        "--dmax",
        "2",
        "--gluing",
        &f,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["gluing"], first["results"]["gluing"]);
}

#[test]
fn stdin_input_and_pretty_output() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_contour"))
        .args(["--pretty", "analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"r": 2, "n": 3, "forms": [[1, 0], [0, 1], [1, "1/2"]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("status    PASS"), "{text}");
}

#[test]
fn demo_passes() {
    let (code, v) = report(&["demo"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}
