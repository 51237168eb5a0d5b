//! End-to-end tests of the `lfvo` binary: exit codes, wire formats, and
//! determinism, plus library-level round-trip and report-verification
//! checks.

use std::path::PathBuf;
use std::process::{Command, Output};

use lfvo_cli::fixtures;
use lfvo_cli::problem_file::ProblemFile;
use lfvo_cli::report::verify_report;

fn lfvo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfvo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_fixture(dir: &tempfile::TempDir, file: &ProblemFile) -> PathBuf {
    let path = dir.path().join(format!("{}.json", file.name));
    std::fs::write(&path, file.to_json()).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_quadrant_exits_2_with_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(&dir, &fixtures::quadrant());
    let out = lfvo(&["classify", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["overall"], "pathological");
    assert_eq!(report["theorem31"]["k"], 1);
    assert_eq!(report["theorem31"]["v"], serde_json::json!(["0", "1"]));
    assert_eq!(report["schema_version"], 1);
}

#[test]
fn classify_choo_atkins_with_points_flag_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(&dir, &fixtures::choo_atkins());
    let out = lfvo(&[
        "classify",
        path.to_str().unwrap(),
        "--points",
        "[2,0];[3,4]",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["overall"], "proper_at_sampled_points");
    for p in report["points"].as_array().unwrap() {
        assert_eq!(p["properness"], "proper");
    }
}

#[test]
fn classify_rejects_malformed_json_with_64() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"not\": \"a problem\"").unwrap();
    let out = lfvo(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    let missing = dir.path().join("nope.json");
    let out = lfvo(&["classify", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn classify_rejects_invalid_instance_with_1() {
    // Denominator x + 1 is unbounded below on K = {x <= 0} extended to 2d.
    let text = r#"{
        "name": "invalid", "n": 1, "m": 2,
        "objectives": [
            {"a": [1], "alpha": 0, "b": [1], "beta": 1},
            {"a": [-1], "alpha": 0, "b": [0], "beta": 1}
        ],
        "constraints": {"C": [[1]], "d": [0]}
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("invalid.json");
    std::fs::write(&path, text).unwrap();
    let out = lfvo(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_rejects_bad_points_flag_with_64() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(&dir, &fixtures::quadrant());
    let out = lfvo(&["classify", path.to_str().unwrap(), "--points", "[1,oops]"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn classify_rejects_single_criterion_problems_with_1() {
    // Valid as a model instance, but classification needs m >= 2.
    let text = r#"{
        "name": "single", "n": 1, "m": 1,
        "objectives": [{"a": [1], "alpha": 0, "b": [0], "beta": 1}],
        "constraints": {"C": [[-1]], "d": [0]}
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("single.json");
    std::fs::write(&path, text).unwrap();
    let out = lfvo(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_point_verdicts_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(&dir, &fixtures::quadrant());
    let path = path.to_str().unwrap();

    let out = lfvo(&["check-point", path, "[1,0]", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["efficient"], true);
    assert_eq!(report["properness"], "inconclusive");
    assert_eq!(report["properness_witness"]["property"], "c");
    assert_eq!(report["properness_witness"]["i"], 1);

    let out = lfvo(&["check-point", path, "[0,1]", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["efficient"], false);
    assert!(report["domination_witness"].is_array());

    let out = lfvo(&["check-point", path, "[-1,0]"]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn probe_ray_csv_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(&dir, &fixtures::quadrant());
    let path = path.to_str().unwrap();

    let out = lfvo(&["probe-ray", path, "[0,0]", "[0,1]", "--ts", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("t,drop_1,"));
    assert!(header.contains("ratio_2"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "7");
    let ratio_col = header.split(',').position(|h| h == "ratio_2").unwrap();
    assert_eq!(row[ratio_col], "8");

    let out = lfvo(&["probe-ray", path, "[0,0]", "[0,-1]"]);
    assert_eq!(out.status.code(), Some(66));

    // No strictly decreasing criterion along (1, 0) from the origin.
    let out = lfvo(&["probe-ray", path, "[0,0]", "[1,0]", "--ts", "1;2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).starts_with("# no criterion strictly decreases"));
}

#[test]
fn generate_is_deterministic_and_classifies_pathological() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(
        lfvo(&["generate", "2", "3", "0", a.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        lfvo(&["generate", "2", "3", "0", b.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let out = lfvo(&["classify", a.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(report["theorem31"].is_null());
    assert!(report["theorem32"].is_object());

    let out = lfvo(&["generate", "1", "2", "0", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn examples_list_and_emit() {
    let out = lfvo(&["examples"]);
    assert_eq!(out.status.code(), Some(0));
    let listing = stdout_of(&out);
    let names: Vec<&str> = listing.lines().collect();
    assert_eq!(
        names,
        vec!["quadrant", "three-criteria", "choo-atkins", "hpy-simplexlike", "hpy-family"]
    );

    let out = lfvo(&["examples", "hpy-family", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let file = ProblemFile::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(file.m, 3);
    assert_eq!(file.objectives[0].alpha.0, lfvo_core::rat(1, 2));
    assert_eq!(file.objectives[0].beta.0, lfvo_core::rat(-3, 4));

    let out = lfvo(&["examples", "choo-atkins"]);
    let file = ProblemFile::from_json(&stdout_of(&out)).unwrap();
    // Rows encode x1 >= 2, 0 <= x2 <= 4.
    assert_eq!(file.constraints.d[0].0, lfvo_core::rat(-2, 1));
    assert_eq!(file.constraints.d[2].0, lfvo_core::rat(4, 1));

    let out = lfvo(&["examples", "unknown-name"]);
    assert_eq!(out.status.code(), Some(64));
    let out = lfvo(&["examples", "hpy-family", "--m", "9"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn fixture_round_trips_are_identity() {
    let mut files = vec![
        fixtures::quadrant(),
        fixtures::three_criteria(),
        fixtures::choo_atkins(),
        fixtures::hpy_simplexlike(),
    ];
    for m in 2..=8 {
        files.push(fixtures::hpy_family(m).unwrap());
    }
    for file in files {
        let text = file.to_json();
        let reparsed = ProblemFile::from_json(&text).unwrap();
        assert_eq!(file, reparsed, "round trip changed {}", file.name);
        assert_eq!(text, reparsed.to_json());
    }
}

#[test]
fn emitted_reports_pass_independent_verification() {
    let dir = tempfile::tempdir().unwrap();
    for file in [fixtures::quadrant(), fixtures::three_criteria(), fixtures::choo_atkins()] {
        let path = write_fixture(&dir, &file);
        let out = lfvo(&["classify", path.to_str().unwrap(), "--json"]);
        let problem_text = std::fs::read_to_string(&path).unwrap();
        verify_report(&problem_text, &stdout_of(&out)).unwrap_or_else(|e| {
            panic!("report for {} failed verification: {e}", file.name);
        });
    }
}

#[test]
fn exit_codes_are_a_function_of_report_content() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(&dir, &fixtures::quadrant());
    let a = lfvo(&["classify", path.to_str().unwrap(), "--json"]);
    let b = lfvo(&["classify", path.to_str().unwrap(), "--json"]);
    assert_eq!(a.status.code(), b.status.code());
    let ja: serde_json::Value = serde_json::from_str(&stdout_of(&a)).unwrap();
    let jb: serde_json::Value = serde_json::from_str(&stdout_of(&b)).unwrap();
    // Identical reports except possibly the lp gauge.
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("lp_calls");
        v
    };
    assert_eq!(strip(ja), strip(jb));
}
