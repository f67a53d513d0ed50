//! End-to-end tests of the binary: exit-code contract, JSON shapes, and
//! byte-level determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn aomega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aomega"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn verify_family_passes_with_exit_zero() {
    let out = aomega(&[
        "verify",
        "--family",
        "r02",
        "--m0",
        "1",
        "--a",
        "3",
        "--window",
        "-10..10",
        "--checks",
        "rb,derivation-of-inverse",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"][0]["name"], "rb");
    assert_eq!(v["checks"][0]["report"]["tuples_checked"], 9261);
    assert_eq!(v["checks"][1]["name"], "derivation-of-inverse");
}

#[test]
fn verify_global_failure_reports_counterexample_and_exit_one() {
    let out = aomega(&["verify", "--support", "3=1,4=1", "--global"]);
    assert_eq!(exit_code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], false);
    let report = &v["checks"][0]["report"];
    assert_eq!(report["passed"], false);
    let cex = &report["counterexamples"][0];
    assert_eq!(cex["tuple"].as_array().unwrap().len(), 3);
    assert!(cex["lhs"].is_string() && cex["rhs"].is_string());
}

#[test]
fn verify_shifted_family_window() {
    let out = aomega(&[
        "verify", "--family", "r03", "--m0", "4", "--s0", "3", "--a", "3/5", "--window", "-8..8",
    ]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(exit_code(&aomega(&["verify", "--family", "bogus"])), 2);
    assert_eq!(exit_code(&aomega(&["verify", "--family", "r02", "--m0", "0", "--a", "3"])), 2);
    assert_eq!(exit_code(&aomega(&["verify", "--support", "3=1", "--window", "oops"])), 2);
    // the global procedure rejects supporter families
    assert_eq!(
        exit_code(&aomega(&[
            "verify", "--family", "r02", "--m0", "1", "--a", "3", "--checks", "global"
        ])),
        2
    );
}

#[test]
fn degenerate_parameter_exits_three() {
    let out = aomega(&[
        "verify", "--family", "r02", "--m0", "1", "--a", "0", "--window", "-4..4",
    ]);
    assert_eq!(exit_code(&out), 3);
    // with the skip flag the same run completes
    let out = aomega(&[
        "verify", "--family", "r02", "--m0", "1", "--a", "0", "--window", "-4..4",
        "--skip-degenerate",
    ]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn classify_finds_the_pair_catalog() {
    let out = aomega(&[
        "classify", "finite", "--range", "-3..4", "--max-size", "2", "--pin", "0=0,1=0",
        "--values", "1,-1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    let rows = v.as_array().unwrap();
    // 6 singletons x 2 values + 3 pair patterns x 4 value pairs
    assert_eq!(rows.len(), 24);
    for row in rows {
        let support = row["support"].as_object().unwrap();
        let indices: Vec<i64> = support.keys().map(|k| k.parse().unwrap()).collect();
        match indices.as_slice() {
            [m1] => {
                assert!(*m1 != 0 && *m1 != 1);
                assert_eq!(row["match"]["label"], "r04");
            }
            [p, q] => {
                assert_eq!(p + q, 1);
                assert_eq!(row["match"]["label"], "r05");
            }
            other => panic!("unexpected support {other:?}"),
        }
    }
}

#[test]
fn classify_pinned_pair_admits_no_extension() {
    let out = aomega(&[
        "classify", "finite", "--range", "-2..3", "--max-size", "1", "--pin", "0=1,1=-1",
        "--values", "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["match"]["label"], "r01");
    assert_eq!(rows[0]["match"]["b"], "-1");
}

#[test]
fn classify_anchored_assignment_is_returned_and_labeled() {
    let out = aomega(&[
        "classify", "finite", "--range", "-1..2", "--max-size", "0", "--pin", "0=1,1=7",
        "--values", "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["match"]["label"], "r01");
    assert_eq!(v[0]["match"]["b"], "7");
    assert_eq!(v[0]["support"]["0"], "1");
    assert_eq!(v[0]["support"]["1"], "7");
}

#[test]
fn induce_single_point_family_is_abelian() {
    let out = aomega(&["induce", "--family", "r04", "--m1", "3", "--window", "-5..5"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["triples"].as_array().unwrap().len(), 0);
    assert_eq!(v["verified"]["fundamental"], true);
    assert_eq!(v["verified"]["rota_baxter"], true);
}

#[test]
fn induce_pair_family_matches_determinant_multiples() {
    let out = aomega(&[
        "induce", "--family", "r05", "--m1", "2", "--b", "1", "--window", "-5..5",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    let triples = v["triples"].as_array().unwrap();
    assert!(!triples.is_empty());
    // every entry involves the support pair {2, -1} and lands on the third index
    for t in triples {
        let (l, m, n) = (
            t["l"].as_i64().unwrap(),
            t["m"].as_i64().unwrap(),
            t["n"].as_i64().unwrap(),
        );
        let idx = [l, m, n];
        assert!(idx.contains(&2) && idx.contains(&-1));
        let out_index = t["out_index"].as_i64().unwrap();
        assert_eq!(out_index, l + m + n - 1);
    }
}

#[test]
fn induce_symbolic_parameter_emits_rational_functions() {
    let out = aomega(&[
        "induce", "--family", "r02", "--m0", "1", "--a", "sym", "--window", "-4..4",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["verified"]["fundamental"], true);
    assert_eq!(v["verified"]["rota_baxter"], true);
    let has_symbolic = v["triples"]
        .as_array()
        .unwrap()
        .iter()
        .any(|t| t["coeff"].as_str().unwrap().contains('a'));
    assert!(has_symbolic);
}

#[test]
fn identical_configs_produce_identical_bytes() {
    let args = [
        "induce", "--family", "r02", "--m0", "2", "--a", "3", "--window", "-6..6",
    ];
    let first = aomega(&args);
    let second = aomega(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());

    let args = [
        "classify", "finite", "--range", "-3..4", "--max-size", "2", "--pin", "0=0,1=0",
        "--values", "1,-1,1/2",
    ];
    let first = aomega(&args);
    let second = aomega(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn workers_flag_does_not_change_output() {
    let base = aomega(&["verify", "--support", "3=1,4=1", "--window", "-6..8"]);
    let one = aomega(&[
        "verify", "--support", "3=1,4=1", "--window", "-6..8", "--workers", "1",
    ]);
    let four = aomega(&[
        "verify", "--support", "3=1,4=1", "--window", "-6..8", "--workers", "4",
    ]);
    assert_eq!(base.stdout, one.stdout);
    assert_eq!(base.stdout, four.stdout);
    assert_eq!(exit_code(&base), 1);
}

#[test]
fn counterexample_cap_is_respected() {
    let out = aomega(&[
        "verify", "--support", "3=1,4=1", "--window", "-8..8", "--max-counterexamples", "2",
    ]);
    let v = stdout_json(&out);
    assert_eq!(
        v["checks"][0]["report"]["counterexamples"].as_array().unwrap().len(),
        2
    );
    // zero removes the cap; the window holds exactly twelve violations
    let out = aomega(&[
        "verify", "--support", "3=1,4=1", "--window", "-8..8", "--max-counterexamples", "0",
    ]);
    let v = stdout_json(&out);
    assert_eq!(
        v["checks"][0]["report"]["counterexamples"].as_array().unwrap().len(),
        12
    );
}

#[test]
fn fundamental_check_runs_without_an_operator() {
    let out = aomega(&["verify", "--checks", "fundamental", "--window", "-4..4"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["checks"][0]["report"]["tuples_checked"], 3024);
}

#[test]
fn report_renders_saved_output() {
    let dir = std::env::temp_dir().join("aomega-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("verify.json");
    let out = aomega(&[
        "verify",
        "--family",
        "r02",
        "--m0",
        "1",
        "--a",
        "3",
        "--window",
        "-6..6",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let rendered = aomega(&["report", "--input", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(exit_code(&rendered), 0);
    let text = String::from_utf8(rendered.stdout).unwrap();
    assert!(text.contains("rb: pass"));
    assert!(text.contains("overall: pass"));
}

#[test]
fn text_format_summarizes_checks() {
    let out = aomega(&[
        "verify", "--family", "r01", "--b", "5", "--window", "-4..4", "--format", "text",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rb: pass"));
}

#[test]
fn spec_json_operator_input() {
    // the output index l+m+n-1 reaches -10, where this parameter
    // degenerates, so the plain run aborts with exit 3
    let base = [
        "verify",
        "--spec",
        r#"{"family":"r03","m0":7,"s0":2,"a":"2"}"#,
        "--window",
        "-8..8",
    ];
    assert_eq!(exit_code(&aomega(&base)), 3);
    let mut skipping = base.to_vec();
    skipping.push("--skip-degenerate");
    assert_eq!(exit_code(&aomega(&skipping)), 0);
}
