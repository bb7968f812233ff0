//! End-to-end runs of the `expspec` binary on small meshes.

use std::path::Path;
use std::process::{Command, Output};

const SMALL: [&str; 8] = ["--lat", "17", "--shell", "16", "--segments", "64", "--gen-lat", "5"];

fn expspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn small(sub: &[&str], extra: &[&str]) -> Output {
    let mut args: Vec<&str> = sub.to_vec();
    args.extend(SMALL);
    args.extend(extra);
    expspec(&args)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn verify_identities_passes() {
    let out = small(&["verify-identities"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["overall_pass"], true);
    assert_eq!(v["config"]["command"], "verify-identities");
    let r = v["records"].as_array().unwrap();
    assert!(r.iter().all(|rec| rec["citation"].as_str().is_some_and(|c| !c.is_empty())));
}

#[test]
fn minimal_mesh_passes() {
    let out = expspec(&["verify-identities", "--lat", "3", "--shell", "8"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unreachable_tolerance_exits_one() {
    let out = small(&["verify-identities"], &["--tol-identity", "1e-20"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["overall_pass"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL identity."));
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(small(&["spectrum", "abc"], &[]).status.code(), Some(2));
    assert_eq!(small(&["verify-identities"], &["--tol-identity", "-1"]).status.code(), Some(2));
    assert_eq!(expspec(&["verify-identities", "--lat", "2"]).status.code(), Some(2));
    assert_eq!(expspec(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("report.json");
    let out = small(&["report-all"], &["--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!target.exists());
}

#[test]
fn spectrum_exports() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ba.csv");
    let svg = dir.path().join("ba.svg");
    let out = small(
        &["spectrum", "ba"],
        &["--cloud-csv", csv.to_str().unwrap(), "--cloud-svg", svg.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&csv).unwrap();
    assert!(csv.starts_with("re,im\n"));
    assert!(csv.lines().count() > 10);
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert!(svg.starts_with("<svg") && !svg.contains("<script"));
}

#[test]
fn spectrum_elements() {
    for el in ["ab", "ba", "one-minus-2ab", "one-minus-2ba", "one"] {
        let out = small(&["spectrum", el], &[]);
        assert_eq!(out.status.code(), Some(0), "{el}");
        assert_eq!(json(&out)["config"]["element"], el);
    }
}

#[test]
fn certify_and_sabotage() {
    let mesh = ["--lat", "17", "--shell", "16"];
    let out = expspec(&[&["certify", "--segments", "64"][..], &mesh].concat());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs[0]["subject"], "ONE_MINUS_2AB");
    assert_eq!(certs[0]["verdict"], "OBSTRUCTED_MODULO_SUSPENSION");
    assert_eq!(certs[0]["assumptions"].as_array().unwrap().len(), 1);
    assert_eq!(certs[1]["verdict"], "NULL_HOMOTOPIC");
    assert!(certs[1]["assumptions"].as_array().unwrap().is_empty());
    assert!(v["deduction"].as_array().unwrap().len() >= 5);

    for s in ["flip-f", "displaced-fiber"] {
        let out = expspec(&[&["certify", "--segments", "64", "--sabotage", s][..], &mesh].concat());
        assert_eq!(out.status.code(), Some(1), "{s}");
        assert!(json(&out)["certificates"].as_array().unwrap().is_empty());
    }
}

#[test]
fn generalize_reports_scope() {
    let out = small(&["generalize"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let notes = json(&out)["notes"].to_string();
    assert!(notes.contains("not machine-checked"));
    let bad = small(&["generalize"], &["--sabotage", "unconjugated-b"]);
    assert_eq!(bad.status.code(), Some(1));
}

fn run_to(path: &Path, format: &str) -> Vec<u8> {
    let out = small(&["report-all"], &["--out", path.to_str().unwrap(), "--format", format]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    std::fs::read(path).unwrap()
}

#[test]
fn report_all_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_to(&dir.path().join("a.json"), "json");
    let b = run_to(&dir.path().join("b.json"), "json");
    assert_eq!(a, b);
}

#[test]
fn csv_summary_format() {
    let dir = tempfile::tempdir().unwrap();
    let body = String::from_utf8(run_to(&dir.path().join("r.csv"), "csv-summary")).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("name,measured,comparison,threshold,pass"));
    assert_eq!(body.lines().last(), Some("overall,,,,true"));
    assert!(body.lines().any(|l| l.starts_with("certify.headline,")));
}
