// Copyright 2026 The qmatops Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qmatops"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn entries(m: &Value) -> Vec<(f64, f64)> {
    m["data"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| match e {
            Value::Array(p) => (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()),
            x => (x.as_f64().unwrap(), 0.0),
        })
        .collect()
}

#[test]
fn row_swap_on_worked_example() {
    let input = data("worked_4x4.json");
    let doc = json(&run(&["row-swap", "--input", input.to_str().unwrap(), "--k", "3", "--l", "1"]));
    assert!((doc["probability"].as_f64().unwrap() - 1.0 / 24.0).abs() < 1e-12);
    assert_eq!(doc["predicted_probability"].as_f64().unwrap(), 1.0 / 24.0);
    let restored = entries(&doc["restored_matrix"]);
    let row = |i: usize| restored[4 * i..4 * i + 4].iter().map(|e| e.0).collect::<Vec<_>>();
    let close = |a: Vec<f64>, b: [f64; 4]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12);
    assert!(close(row(1), [0.1875, 0.1875, 0.125, 0.5]));
    assert!(close(row(3), [0.0, 0.5, 0.125, 0.125]));
    for field in ["gate_tally", "matrix", "frobenius_scale", "steps"] {
        assert!(doc.get(field).is_some(), "missing {field}");
    }
}

#[test]
fn transpose_always_succeeds() {
    let input = data("complex_3x2.json");
    for cmd in ["transpose", "transpose-square"] {
        let doc = json(&run(&[cmd, "--input", input.to_str().unwrap()]));
        assert_eq!(doc["probability"].as_f64().unwrap(), 1.0);
        assert_eq!(doc["matrix"]["rows"], 2);
        assert_eq!(doc["matrix"]["cols"], 3);
        assert_eq!(doc["gate_tally"]["total"]["toffoli"], 0);
    }
}

#[test]
fn reports_are_deterministic() {
    let input = data("complex_3x2.json");
    let args = ["row-add", "--input", input.to_str().unwrap(), "--k", "0", "--l", "2", "--shots", "500", "--seed", "4", "-v"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["sampling"]["shots"], 500);
    let names: Vec<&str> = doc["branches"].as_array().unwrap().iter().map(|b| b["state"].as_str().unwrap()).collect();
    assert_eq!(names, ["Phi_0", "Phi_1", "Phi_2", "Phi_3", "Phi_4", "Phi_5"]);
}

#[test]
fn matrix_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    let report = dir.path().join("report.json");
    let input = data("complex_3x2.json");
    let out = run(&[
        "transpose",
        "--input",
        input.to_str().unwrap(),
        "--matrix-out",
        once.to_str().unwrap(),
        "--output",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let out = run(&["transpose", "--input", once.to_str().unwrap(), "--matrix-out", twice.to_str().unwrap()]);
    assert!(out.status.success());
    let original: Value = serde_json::from_str(&std::fs::read_to_string(input).unwrap()).unwrap();
    let back: Value = serde_json::from_str(&std::fs::read_to_string(twice).unwrap()).unwrap();
    assert_eq!(back["rows"], 3);
    for (a, b) in entries(&original).iter().zip(entries(&back)) {
        assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    }
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(doc["algorithm"], "transpose");
}

#[test]
fn rejections_exit_nonzero_with_diagnostic() {
    let input = data("worked_4x4.json");
    let input = input.to_str().unwrap();
    let rect = data("complex_3x2.json");
    let cases: [(&[&str], &str); 4] = [
        (&["row-add", "--input", input, "--k", "2", "--l", "2"], "must differ"),
        (&["row-swap", "--input", input, "--k", "0", "--l", "9"], "out of range"),
        (&["trace", "--input", rect.to_str().unwrap()], "square"),
        (&["transpose", "--input", "/nonexistent/matrix.json"], "cannot read"),
    ];
    for (args, needle) in cases {
        let out = run(args);
        assert!(!out.status.success(), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{args:?}: {err}");
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"rows": 2, "cols": 2, "data": [1, 2, 3]}"#).unwrap();
    let out = run(&["transpose", "--input", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("entries"));
    assert!(!run(&["trace", "--input", input, "--k", "1"]).status.success());
}

#[test]
fn worked_example_replay_passes() {
    let out = run(&["appendix1"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["Phi_0", "Phi_5", "Phi_6"] {
        assert!(text.contains(name));
    }
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn scaling_report() {
    let doc = json(&run(&["scaling", "--algorithm", "trace", "--widths", "1,2,3"]));
    assert!(doc["claims"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert!(!run(&["scaling", "--algorithm", "trace", "--widths", "3"]).status.success());
}

#[test]
fn verify_suite_passes() {
    let out = run(&["verify", "--seed", "7"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}
