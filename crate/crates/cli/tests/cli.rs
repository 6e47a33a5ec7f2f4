//! End-to-end tests of the binary: exit codes, JSON round trips, CSV side
//! files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use onewave::matkit::Matrix;
use onewave::wavelet::WaveletSpec;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_onewave"))
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let rot = write(dir.path(), "rot.json", r#"{"n":2,"rows":[[0,1],[-1,0]]}"#);
    let out = run(&["check", "--matrix", &rot]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "NotAdmissible");
    assert_eq!(v["criterion"], "TwoByTwoTrace");

    let id = write(dir.path(), "id.json", r#"{"n":2,"rows":[[1,0],[0,1]]}"#);
    assert_eq!(run(&["check", "--matrix", &id]).status.code(), Some(0));

    let nil = write(
        dir.path(),
        "nil.json",
        r#"{"n":3,"rows":[[0,1,0],[0,0,1],[0,0,0]]}"#,
    );
    let out = run(&["check", "--matrix", &nil]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["status"], "Unknown");
}

#[test]
fn parse_errors_exit_64_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"n":2,"rows":[[1,2,3],[0,1]]}"#);
    let out = run(&["check", "--matrix", &bad]);
    assert_eq!(out.status.code(), Some(64));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("rows[0]"), "stderr was: {msg}");

    let out = run(&["check", "--matrix", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn unknown_flags_are_hard_errors() {
    let out = run(&["check", "--matrix", "x.json", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2)); // clap usage error
    assert!(String::from_utf8_lossy(&out.stderr).contains("--frobnicate"));
}

#[test]
fn construct_emits_reloadable_specs() {
    let dir = tempfile::tempdir().unwrap();
    let shear = write(dir.path(), "shear.json", r#"{"n":2,"rows":[[1,1],[0,1]]}"#);
    let spec_path = dir.path().join("spec.json");
    let out = run(&[
        "construct",
        "--matrix",
        &shear,
        "--out",
        spec_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "profile");
    assert_eq!(v["profile"], "raised-sine");
    // The emitted file re-parses into the same in-memory spec.
    let from_file: WaveletSpec =
        serde_json::from_str(&fs::read_to_string(&spec_path).unwrap()).unwrap();
    let rebuilt = WaveletSpec::profile(
        &Matrix::of([[1.0, 1.0], [0.0, 1.0]]),
        onewave::wavelet::Profile::raised_sine(),
    )
    .unwrap();
    assert_eq!(from_file, rebuilt);

    let diag = write(dir.path(), "diag.json", r#"{"n":2,"rows":[[1,0],[0,-2]]}"#);
    let out = run(&["construct", "--matrix", &diag]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["kind"], "indicator");
}

#[test]
fn construct_refuses_when_it_must() {
    let dir = tempfile::tempdir().unwrap();
    let zero_trace = write(dir.path(), "zt.json", r#"{"n":2,"rows":[[1,0],[0,-1]]}"#);
    let out = run(&["construct", "--matrix", &zero_trace]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["verdict"]["status"], "NotAdmissible");

    let nil = write(
        dir.path(),
        "nil.json",
        r#"{"n":3,"rows":[[0,1,0],[0,0,1],[0,0,0]]}"#,
    );
    assert_eq!(run(&["construct", "--matrix", &nil]).status.code(), Some(2));

    // Admissible by trace, mixed-sign symmetric part, no similarity given.
    let traceful = write(dir.path(), "tr.json", r#"{"n":2,"rows":[[1,10],[0,-2]]}"#);
    let out = run(&["construct", "--matrix", &traceful]);
    assert_eq!(out.status.code(), Some(3));
    let msg = stdout_json(&out)["refusal"].as_str().unwrap().to_string();
    assert!(msg.contains("similarity"), "refusal was: {msg}");
}

#[test]
fn construct_with_similarity_builds_a_transported_spec() {
    let dir = tempfile::tempdir().unwrap();
    // W·X·W⁻¹ = diag(1,2) for X = [[1,−1],[0,2]], W = [[1,1],[0,1]].
    let x = write(dir.path(), "x.json", r#"{"n":2,"rows":[[1,-1],[0,2]]}"#);
    let w = write(dir.path(), "w.json", r#"{"n":2,"rows":[[1,1],[0,1]]}"#);
    let spec_path = dir.path().join("spec.json");
    let out = run(&[
        "construct",
        "--matrix",
        &x,
        "--similarity",
        &w,
        "--out",
        spec_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "transported");
    assert_eq!(v["base"]["kind"], "indicator");

    // The spec verifies against the generator it was built for.
    let out = run(&[
        "delta",
        "--wavelet",
        spec_path.to_str().unwrap(),
        "--matrix",
        &x,
        "--samples",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["passed"], true);
}

#[test]
fn delta_reports_are_deterministic_and_csv_matches() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "d.json", r#"{"n":2,"rows":[[1,0],[0,2]]}"#);
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"kind":"indicator","generator":{"n":2,"rows":[[1,0],[0,2]]}}"#,
    );
    let out_json = dir.path().join("report.json");
    let a = run(&[
        "delta", "--wavelet", &spec, "--matrix", &d, "--samples", "12", "--seed", "7",
        "--out", out_json.to_str().unwrap(),
    ]);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&[
        "delta", "--wavelet", &spec, "--matrix", &d, "--samples", "12", "--seed", "7",
    ]);
    assert_eq!(a.stdout, b.stdout, "same seed must give byte-identical reports");

    // File content equals stdout (modulo the printed newline).
    assert_eq!(
        fs::read_to_string(&out_json).unwrap(),
        String::from_utf8(a.stdout.clone()).unwrap().trim_end()
    );

    let out_csv = dir.path().join("report.csv");
    let c = run(&[
        "delta", "--wavelet", &spec, "--matrix", &d, "--samples", "12", "--seed", "7",
        "--format", "csv", "--out", out_csv.to_str().unwrap(),
    ]);
    assert_eq!(c.status.code(), Some(0));
    let csv = fs::read_to_string(&out_csv).unwrap();
    assert!(csv.starts_with("xi_0,xi_1,delta,err\n"));
    assert_eq!(csv.lines().count(), 13);
}

#[test]
fn delta_flags_a_mis_scaled_profile_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", r#"{"n":2,"rows":[[1,1],[0,1]]}"#);
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"kind":"profile","generator":{"n":2,"rows":[[1,1],[0,1]]},"profile":{"name":"raised-sine","scale":0.5}}"#,
    );
    let out = run(&["delta", "--wavelet", &spec, "--matrix", &x, "--samples", "5"]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], false);
    let worst = v["worst_sample"]["delta"].as_f64().unwrap();
    assert!((worst - 0.25).abs() < 1e-3, "worst Δ = {worst}");
}

#[test]
fn probe_growth_kinds_report_expected_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("growth.csv");
    let out = run(&[
        "probe", "--kind", "rotation", "--format", "csv", "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let slope = v["table"]["fitted_exponent"].as_f64().unwrap();
    assert!((slope - 2.0).abs() < 0.05);
    assert!(fs::read_to_string(&csv_path).unwrap().starts_with("R,mass\n"));

    let d = write(dir.path(), "d.json", r#"{"n":2,"rows":[[1,0],[0,-1]]}"#);
    let out = run(&["probe", "--kind", "trace-zero", "--matrix", &d]);
    assert_eq!(out.status.code(), Some(0));
    let slope = stdout_json(&out)["table"]["fitted_exponent"].as_f64().unwrap();
    assert!((slope - 1.0).abs() < 0.05);

    let out = run(&["probe", "--kind", "shear"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn csv_format_requires_an_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "d.json", r#"{"n":2,"rows":[[1,0],[0,2]]}"#);
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"kind":"indicator","generator":{"n":2,"rows":[[1,0],[0,2]]}}"#,
    );
    let out = run(&["delta", "--wavelet", &spec, "--matrix", &d, "--samples", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--out"));
}

#[test]
fn probe_lie_reports_halving_ratios() {
    let out = run(&["probe", "--kind", "lie"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    for r in v["ratios"].as_array().unwrap() {
        let r = r.as_f64().unwrap();
        assert!((1.6..=2.4).contains(&r));
    }
}

#[test]
fn probe_orbit_dumps_decompositions() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", r#"{"n":2,"rows":[[1,1],[0,1]]}"#);
    let csv_path = dir.path().join("orbit.csv");
    let out = run(&[
        "probe", "--kind", "orbit", "--matrix", &x, "--samples", "8", "--format", "csv",
        "--out", csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v["max_residual"].as_f64().unwrap() <= 1e-9);
    let csv = fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("t,v_0,v_1,xi_norm\n"));
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn reconstruct_passes_for_an_admissible_spec() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", r#"{"n":2,"rows":[[1,1],[0,1]]}"#);
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"kind":"profile","generator":{"n":2,"rows":[[1,1],[0,1]]},"profile":"raised-sine"}"#,
    );
    let out = run(&[
        "reconstruct", "--wavelet", &spec, "--matrix", &x, "--grid-points", "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert!(v["relative_error"].as_f64().unwrap() <= 1e-4);
}
