//! The command-line tool driven as a subprocess: exit codes and JSON shape.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).expect("write scratch file");
    path
}

/// Exit code and parsed stdout (`Null` if stdout is not JSON).
fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_surgeq"))
        .args(args)
        .output()
        .expect("spawn surgeq");
    let code = out.status.code().expect("exited normally");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

#[test]
fn lens_verdicts() {
    let (code, v) = run(&["lens", "7", "1", "7", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "Equivalent");
    assert_eq!(v["certificate"]["tag"], "lens-unit-square");
    assert_eq!(run(&["lens", "5", "1", "5", "2"]).0, 1);
    assert_eq!(run(&["lens", "5", "-1", "5", "4"]).0, 0);
    assert_eq!(run(&["lens", "6", "1", "5", "1"]).0, 1);
    // gcd(2, 4) = 2 is not a lens space.
    assert_eq!(run(&["lens", "4", "2", "4", "1"]).0, 3);
}

#[test]
fn lens_certificate_flag() {
    let (_, compact) = run(&["lens", "7", "1", "7", "2"]);
    assert!(compact.get("notes").is_none());
    let (_, full) = run(&["lens", "7", "1", "7", "2", "--certificate"]);
    assert_eq!(full["certificate"]["a"]["q"], 1);
    assert!(full["notes"].as_array().is_some_and(|n| !n.is_empty()));
}

#[test]
fn invariants_of_lens_space() {
    let (code, v) = run(&["invariants", &fixture("lens/L5_2.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["h1"]["betti"], 0);
    assert_eq!(v["h1"]["factors"], serde_json::json!([5]));
    assert_eq!(v["linking_form"]["values"], serde_json::json!([["2/5"]]));
    assert_eq!(v["linking_form"]["class"], "2");
}

#[test]
fn invariants_of_unlink_and_borromean() {
    let (code, v) = run(&["invariants", &fixture("unlink3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["h1"]["betti"], 3);
    assert_eq!(v["trilinear"]["coeffs"], serde_json::json!({}));

    let (_, v) = run(&["invariants", &fixture("borromean.json")]);
    let c = v["trilinear"]["coeffs"]["1,2,3"].as_i64().expect("coefficient");
    assert_eq!(c.abs(), 1);
    assert_eq!(v["mu_bar"]["first_nonvanishing"]["index"], "1,2,3");
}

#[test]
fn compare_examples() {
    let (code, v) = run(&["compare", &fixture("lens/L7_1.json"), &fixture("lens/L7_2.json")]);
    assert_eq!((code, v["status"].as_str()), (0, Some("Equivalent")));

    let (code, v) = run(&[
        "compare",
        &fixture("borromean.json"),
        &fixture("unlink3.json"),
        "--relation",
        "rational2",
    ]);
    assert_eq!((code, v["relation"].as_str()), (1, Some("rational2")));

    let (code, v) = run(&[
        "compare",
        &fixture("whitehead.json"),
        &fixture("unlink2.json"),
        "--relation",
        "k=3",
    ]);
    assert_eq!((code, v["status"].as_str()), (1, Some("NotEquivalent")));
    assert_eq!(run(&["compare", &fixture("whitehead.json"), &fixture("unlink2.json"), "--relation", "k=2"]).0, 0);
}

#[test]
fn compare_unknown_on_unclassified_torsion() {
    let (code, v) = run(&["compare", &fixture("borromean_5.json"), &fixture("three_L5_1.json")]);
    assert_eq!(code, 4);
    assert_eq!(v["status"], "Unknown");
}

#[test]
fn parse_and_precondition_errors() {
    assert_eq!(run(&["invariants", "/nonexistent/file.json"]).0, 2);
    let broken = scratch("broken.json", r#"{"components":[{"framing":"1"}],"lk":[[0,1]]}"#);
    assert_eq!(run(&["invariants", broken.to_str().unwrap()]).0, 2);
    let l = fixture("lens/L5_2.json");
    assert_eq!(run(&["compare", &l, &l, "--relation", "integral3"]).0, 2);
    // k-relations need 0-framed, algebraically split presentations.
    assert_eq!(run(&["compare", &l, &l, "--relation", "k=2"]).0, 3);
    assert_eq!(run(&["milnor", &l]).0, 3);
    assert_eq!(run(&["nilpotent-ranks", "0", "2"]).0, 3);
}

#[test]
fn expand_round_trips() {
    let (code, v) = run(&["expand", &fixture("lens/L5_2.json")]);
    assert_eq!(code, 0);
    let framings: Vec<&str> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["framing"].as_str().unwrap())
        .collect();
    assert_eq!(framings.len(), 2);
    assert!(framings.iter().all(|f| f.ends_with("/1")));

    let path = scratch("expanded_L5_2.json", &v.to_string());
    let (code, inv) = run(&["invariants", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(inv["h1"]["factors"], serde_json::json!([5]));
    let (_, again) = run(&["expand", path.to_str().unwrap()]);
    assert_eq!(again, v);

    let half = scratch("half.json", r#"{"components":[{"framing":"1/2"}],"lk":[[0]]}"#);
    let (_, v) = run(&["expand", half.to_str().unwrap()]);
    let path = scratch("expanded_half.json", &v.to_string());
    let (_, inv) = run(&["invariants", path.to_str().unwrap()]);
    assert_eq!(inv["h1"]["betti"], 0);
    assert_eq!(inv["h1"]["factors"], serde_json::json!([]));
}

#[test]
fn milnor_command() {
    let w = fixture("whitehead.json");
    let (code, v) = run(&["milnor", &w, "--index", "1,1,2,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"].as_i64().map(i64::abs), Some(1));
    let (_, v) = run(&["milnor", &w]);
    assert_eq!(v["first_nonvanishing_length"], 4);
    assert_eq!(run(&["milnor", &w, "--index", "1,x"]).0, 2);
}

#[test]
fn orbit_command() {
    let f = r#"{"m": 4, "coeffs": {"1,2,3": 2, "1,2,4": 4}}"#;
    let (code, v) = run(&["orbit", f]);
    assert_eq!(code, 0);
    assert_eq!(v["content"], 2);
    let g = r#"{"m": 4, "coeffs": {"2,3,4": -2}}"#;
    let (code, v) = run(&["orbit", f, g]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "Yes");
    let h = r#"{"m": 4, "coeffs": {"2,3,4": 3}}"#;
    assert_eq!(run(&["orbit", f, h]).0, 1);
    assert_eq!(run(&["orbit", r#"{"m": 3, "coeffs": {"0,1,2": 1}}"#]).0, 2);
}

#[test]
fn nilpotent_ranks_command() {
    assert_eq!(run(&["nilpotent-ranks", "2", "3"]), (0, serde_json::json!(1)));
    assert_eq!(run(&["nilpotent-ranks", "4", "2"]), (0, serde_json::json!(4)));
}
