use std::path::PathBuf;
use std::process::{Command, Output};

use nambu_forge::Config;
use nambu_forge_cli::document::{definition_to_value, Kind};
use nambu_forge_cli::{builtins, parse_spec, run_checks, serialize_spec, SpecError};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nambu-forge"))
}

fn write_spec(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn check(name: &str, text: &str, extra: &[&str]) -> Output {
    let path = write_spec(name, text);
    bin().arg("check").arg(path).args(extra).output().unwrap()
}

fn shipped(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)).unwrap()
}

#[test]
fn syntax_error_exits_2_with_position() {
    let out = check("syntax.json", "{\"format_version\": 1,\n  \"checks\": [", &[]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 2"), "{msg}");
}

#[test]
fn unresolved_name_exits_3() {
    let text = r#"{"format_version": 1, "definitions": {}, "checks": [{"check": "fundamental_identity", "target": "psi7"}]}"#;
    let out = check("unresolved.json", text, &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("psi7"));
}

#[test]
fn dimension_mismatch_exits_4() {
    let text = r#"{"format_version": 1, "definitions": {},
        "checks": [{"check": "morphism_algebroid", "map": "identity_fwd2", "a1": "tangent3", "a2": "tangent3"}]}"#;
    let out = check("dimension.json", text, &[]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn invalid_document_is_rejected() {
    let doc = parse_spec(r#"{"format_version": 1, "checks": [{"check": "no_such_check"}]}"#);
    assert!(matches!(doc, Err(SpecError::Invalid(_))), "{doc:?}");
    let extra = parse_spec(r#"{"format_version": 1, "checks": [], "other": 1}"#);
    assert_eq!(extra.unwrap_err().exit_code(), 2);
}

#[test]
fn empty_check_list_gives_empty_report() {
    let out = check("empty.json", r#"{"format_version": 1, "checks": []}"#, &["--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"], Value::Array(vec![]));
    assert_eq!(report["totals"]["fail"], 0);
}

#[test]
fn failing_verdict_exits_1_with_witness() {
    let text = r#"{"format_version": 1, "checks": [
        {"check": "duality_morphism", "map": "base_scaled2", "a1": "tangent2", "a2": "tangent2"}]}"#;
    let out = check("duality.json", text, &["--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entry = &report["results"][0];
    assert_eq!(entry["status"], "fail");
    assert_eq!(entry["paired"]["direct"], "fail");
    assert_eq!(entry["paired"]["dual"], "fail");
    assert!(entry["witness"]["condition"].is_string());
}

#[test]
fn v4_builtin_resolves_and_passes() {
    let doc = parse_spec(r#"{"format_version": 1, "checks": [{"check": "fundamental_identity", "target": "v4"}]}"#)
        .unwrap();
    let report = run_checks(&doc, &Config::builtin()).unwrap();
    assert_eq!(report.exit_code(), 0);
    assert!(builtins::lookup("v4", Kind::Nlie).is_some());
    assert!(builtins::lookup("v4", Kind::Nambu).is_none());
}

#[test]
fn shipped_specs_round_trip() {
    for name in ["nlie.json", "rinehart.json", "nambu.json", "algebroid.json"] {
        let doc = parse_spec(&shipped(name)).unwrap();
        let again = parse_spec(&serialize_spec(&doc)).unwrap();
        assert_eq!(doc, again, "{name}");
    }
}

#[test]
fn builtin_definitions_round_trip() {
    for name in ["v4", "tangent3", "canonical4", "identity2", "base_scaled3", "zero_pullback2"] {
        let defs = builtins::lookup_any(name);
        assert!(!defs.is_empty(), "{name}");
        for d in defs {
            let value = definition_to_value(&d);
            let text = serde_json::json!({"format_version": 1, "definitions": {"x": value.clone()}, "checks": []});
            let doc = parse_spec(&text.to_string()).unwrap();
            // bundle-map matrices are widened until their base is known, so compare the printed form
            assert_eq!(definition_to_value(&doc.definitions["x"]), value, "{name}");
        }
    }
}

#[test]
fn builtin_command() {
    let list = bin().arg("builtin").output().unwrap();
    assert!(list.status.success());
    assert!(String::from_utf8_lossy(&list.stdout).contains("tangent<n>"));
    let one = bin().args(["builtin", "v4"]).output().unwrap();
    assert!(one.status.success());
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["kind"], "nlie");
    let missing = bin().args(["builtin", "v5"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn explain_command() {
    let one = bin().args(["explain", "--check", "subalgebroid"]).output().unwrap();
    assert!(one.status.success());
    assert!(String::from_utf8_lossy(&one.stdout).starts_with("subalgebroid: "));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join("nambu.json");
    let file = bin().arg("explain").arg(path).output().unwrap();
    assert!(file.status.success());
    assert!(String::from_utf8_lossy(&file.stdout).contains("[  1]"));
    let bad = bin().args(["explain", "--check", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn bounds_are_echoed_in_the_report() {
    let out = check(
        "bounds.json",
        r#"{"format_version": 1, "checks": []}"#,
        &["--json", "--probe-degree", "3", "--degree-bound", "5"],
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["settings"]["probe_degree"], 3);
    assert_eq!(report["settings"]["degree_bound"], 5);
}
