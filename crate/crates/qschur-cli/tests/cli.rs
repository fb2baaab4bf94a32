//! End-to-end checks of the binary: exit codes, JSON shapes, and
//! byte-level determinism of reports.

use std::process::{Command, Output};

fn qschur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qschur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn lr_coeff_prints_gamma() {
    let out = qschur(&["lr-coeff", "--lambda", "2,2", "--mu", "1", "--nu", "2,1"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out), serde_json::json!({ "gamma": 1 }));
}

#[test]
fn verify_yb_reports_both_identities() {
    let out = qschur(&["verify-yb", "--N", "3", "--preset", "ones"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out),
        serde_json::json!({ "braid": true, "iwahori": true })
    );
}

#[test]
fn invalid_partition_exits_two() {
    let out = qschur(&["lr-coeff", "--lambda", "1,2", "--nu", "2,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_preset_exits_two() {
    let out = qschur(&["verify-yb", "--N", "2", "--preset", "mystery"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conflicting_spec_flags_exit_two() {
    let out = qschur(&[
        "verify-filtration", "--lambda", "2,1", "--N", "2", "--root", "3", "--eval", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schur_basis_reports_rank_fields() {
    let out = qschur(&["schur-basis", "--lambda", "2,2", "--mu", "1", "--N", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["rank"], v["standard_count"]);
    let rank = v["rank"].as_u64().unwrap();
    let kernel = v["kernel_rank"].as_u64().unwrap();
    assert!(rank > 0 && rank + kernel >= rank);
}

#[test]
fn straighten_expands_standard_tableau_trivially() {
    let out = qschur(&[
        "straighten", "--lambda", "2,1", "--N", "2", "--rows", "1,2;2",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let terms = v["expansion"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["tableau"], serde_json::json!([[1, 2], [2]]));
    assert_eq!(terms[0]["coefficient"], "1");
}

#[test]
fn filtration_report_carries_layers() {
    let out = qschur(&[
        "verify-filtration", "--lambda", "2,2", "--mu", "1", "--N", "2", "--root", "3",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["spec"], "cyclotomic(3)");
    assert!(v["layers"].as_array().unwrap().iter().all(|l| l["ok"] == true));
}

#[test]
fn dsum_report_covers_all_middle_shapes() {
    let out = qschur(&["verify-dsum", "--lambda", "2,1", "--N", "2", "--M", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["layers"].as_array().unwrap().len(), 5);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "verify-filtration", "--lambda", "2,1", "--mu", "1", "--N", "2",
        "--preset", "seeded", "--seed", "9",
    ];
    let first = qschur(&args);
    let second = qschur(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn out_flag_duplicates_stdout() {
    let dir = std::env::temp_dir().join(format!("qschur-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = qschur(&[
        "lr-coeff", "--lambda", "3,2,1", "--mu", "2,1", "--nu", "2,1",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let file = std::fs::read(&path).unwrap();
    assert_eq!(file, out.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(stdout_json(&out)["gamma"], 2);
}

#[test]
fn parameter_file_feeds_the_braiding_operator() {
    let dir = std::env::temp_dir().join(format!("qschur-cli-ufile-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("u.json");
    std::fs::write(&path, r#"{"N": 3, "U": [[0, 2], [-2, 0]]}"#).unwrap();
    let out = qschur(&["verify-yb", "--N", "3", "--U", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out),
        serde_json::json!({ "braid": true, "iwahori": true })
    );
    let mismatched = qschur(&["verify-yb", "--N", "4", "--U", path.to_str().unwrap()]);
    assert_eq!(mismatched.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rational_evaluation_spec_is_accepted() {
    let out = qschur(&[
        "verify-dsum", "--lambda", "2,2", "--N", "2", "--M", "2", "--eval", "-2/3",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["spec"], "eval(-2/3)");
    assert_eq!(v["status"], "ok");
}
