//! Process-level tests of the binary: exit codes, report shapes, output
//! determinism, and the error paths for malformed input.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn descent() -> Command {
    Command::new(env!("CARGO_BIN_EXE_descent"))
}

fn case_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("cases")
        .join(format!("{name}.json"))
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn temp_spec(contents: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::Builder::new()
        .suffix(".json")
        .tempfile()
        .expect("temp file");
    file.write_all(contents.as_bytes()).expect("write spec");
    file
}

#[test]
fn seq5_flagship_reports_five_groups_and_exits_zero() {
    let out = descent()
        .args(["verify"])
        .arg(case_path("seq5_f2_f4"))
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("json");
    let groups = report["groups"].as_array().expect("groups");
    assert_eq!(groups.len(), 5);
    let orders: Vec<u64> = groups.iter().map(|g| g["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![1, 3, 3, 1, 1]);
    let positions = report["positions"].as_array().expect("positions");
    assert_eq!(positions.len(), 4);
    assert!(positions.iter().all(|p| p["exact"].as_bool() == Some(true)));
    assert_eq!(report["sequence"][0], "U(R)");
}

#[test]
fn hilbert90_case_reports_trivial_h1() {
    let out = descent()
        .args(["verify"])
        .arg(case_path("hilbert90_n2_f2"))
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("json");
    assert_eq!(report["h1"]["order"], 1);
    assert_eq!(report["pass"], true);
}

#[test]
fn non_injective_unit_map_exits_one_naming_the_reason() {
    let spec = temp_spec(
        r#"{
            "id": "bad",
            "kind": "seq5",
            "hom": {
                "dom": {"kind": "zmod", "n": 4},
                "cod": {"kind": "zmod", "n": 2},
                "values": [0, 1, 0, 1]
            }
        }"#,
    );
    let out = descent().arg("verify").arg(spec.path()).output().expect("run");
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_str(&out);
    assert!(err.contains("NotMono"), "stderr was: {err}");
}

#[test]
fn malformed_json_exits_one_with_position_info() {
    let spec = temp_spec("{\"id\": \"broken\", \"kind\": ");
    let out = descent().arg("verify").arg(spec.path()).output().expect("run");
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_str(&out);
    assert!(err.contains("line") && err.contains("column"), "stderr: {err}");
}

#[test]
fn unknown_kind_exits_one_and_names_the_variant() {
    let spec = temp_spec(r#"{"id": "x", "kind": "sq5"}"#);
    let out = descent().arg("verify").arg(spec.path()).output().expect("run");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("sq5"));
}

#[test]
fn unverified_hypotheses_exit_three_unless_waived() {
    // A non-surjective inclusion: cohomology is still trivial, but the
    // monadicity hypothesis cannot be certified, so the verdict is advisory.
    let spec = temp_spec(
        r#"{
            "id": "inclusion",
            "kind": "hilbert90",
            "morphism": {
                "source": {"kind": "grouplike", "n": 1, "field": {"p": 3}},
                "target": {"kind": "grouplike", "n": 2, "field": {"p": 3}},
                "map": [0]
            }
        }"#,
    );
    let out = descent().arg("verify").arg(spec.path()).output().expect("run");
    assert_eq!(out.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("json");
    assert_eq!(report["advisory"], true);
    assert_eq!(report["pass"], true);

    let out = descent()
        .arg("verify")
        .arg(spec.path())
        .arg("--advisory-ok")
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn selftest_output_is_byte_identical_for_a_fixed_seed() {
    let run = || {
        descent()
            .args(["selftest", "--only", "snf", "--seed", "7", "--emit", "json"])
            .output()
            .expect("run")
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(!stdout_str(&first).contains("wall"));
}

#[test]
fn selftest_filter_without_matches_is_a_usage_error() {
    let out = descent()
        .args(["selftest", "--only", "zzz_nothing"])
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn multi_case_reports_are_sorted_by_case_id() {
    let out = descent()
        .arg("verify")
        .arg(case_path("seq5_f2_f4"))
        .arg(case_path("inv_f2_f4"))
        .arg(case_path("dual_f2_f4"))
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let reports: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("json");
    let ids: Vec<&str> = reports
        .as_array()
        .expect("array")
        .iter()
        .map(|r| r["case"].as_str().unwrap())
        .collect();
    assert_eq!(ids, vec!["dual_f2_f4", "inv_f2_f4", "seq5_f2_f4"]);
}

#[test]
fn text_mode_shows_wall_time_and_position_table() {
    let out = descent()
        .arg("verify")
        .arg(case_path("seq5_f2_f4"))
        .args(["--emit", "text"])
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("ms)"), "no wall time in: {text}");
    assert!(text.contains("U(S)"));
    assert!(text.contains("exact"));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let target = dir.path().join("report.json");
    let out = descent()
        .arg("verify")
        .arg(case_path("pic_f2_f4"))
        .arg("--out")
        .arg(&target)
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    assert!(stdout_str(&out).is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).expect("read"))
            .expect("json");
    assert_eq!(report["case"], "pic_f2_f4");
    assert_eq!(report["pass"], true);
}

#[test]
fn describe_builds_the_inputs_and_reports_orders() {
    let out = descent()
        .arg("describe")
        .arg(case_path("seq5_f3_f9"))
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("base ring: order 3"));
    assert!(text.contains("extension ring: order 9"));
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = descent()
        .args(["verify", "/nonexistent/case.json"])
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("cannot read"));
}
