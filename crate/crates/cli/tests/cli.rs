use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    out: Value,
    raw: String,
}

fn dibelief(args: &[&str]) -> Run {
    let output = Command::new(env!("CARGO_BIN_EXE_dibelief")).args(args).output().expect("binary runs");
    let raw = String::from_utf8(output.stdout).unwrap();
    Run { code: output.status.code().unwrap_or(-1), out: serde_json::from_str(&raw).unwrap_or(Value::Null), raw }
}

fn put(dir: &Path, name: &str, v: &Value) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_string_lossy().into_owned()
}

fn classical_model() -> Value {
    json!({"space": {"kind": "classical", "atoms": ["a", "b"]}, "desirable_generators": [[-1, 2]]})
}

#[test]
fn classify_empty_subset_is_improper() {
    let dir = TempDir::new().unwrap();
    let e = put(dir.path(), "e.json", &json!({"kind": "classical", "subset": []}));
    let r = dibelief(&["classify", &e]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out["class"], "improper");

    let whole = put(dir.path(), "w.json", &json!({"kind": "classical", "atoms": ["a", "b"], "subset": ["a", "b"]}));
    assert_eq!(dibelief(&["classify", &whole]).out["class"], "regular");
    let bare = put(dir.path(), "b.json", &json!({"kind": "classical", "subset": ["a"]}));
    assert_eq!(dibelief(&["classify", &bare]).code, 2);
}

#[test]
fn member_with_mismatched_spaces_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let m = put(dir.path(), "m.json", &classical_model());
    let u = put(dir.path(), "u.json", &json!([[[1, 0], [0, 0]], [[0, 0], [1, 0]]]));
    assert_eq!(dibelief(&["member", &m, &u]).code, 2);
    let u = put(dir.path(), "v.json", &json!([1, 2, 3]));
    assert_eq!(dibelief(&["member", &m, &u]).code, 2);
}

#[test]
fn member_reports_status() {
    let dir = TempDir::new().unwrap();
    let m = put(dir.path(), "m.json", &classical_model());
    let u = put(dir.path(), "u.json", &json!(["-1", "2"]));
    let r = dibelief(&["member", &m, &u]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out["status"]["desirable"], "yes");
    let u = put(dir.path(), "v.json", &json!([2, -1]));
    let r = dibelief(&["member", &m, &u]);
    assert_eq!(r.out["status"]["accepted"], "no");
}

#[test]
fn check_passes_a_coherent_model() {
    let dir = TempDir::new().unwrap();
    let m = put(dir.path(), "m.json", &classical_model());
    let r = dibelief(&["check", &m]);
    assert_eq!(r.code, 0, "{}", r.raw);
    assert_eq!(r.out["consistent"], true);
    let bad = put(dir.path(), "bad.json", &json!({"desirable_generators": [[-1, 0]]}));
    assert_eq!(dibelief(&["check", &bad]).code, 1);
}

#[test]
fn revise_writes_a_loadable_model() {
    let dir = TempDir::new().unwrap();
    let m = put(dir.path(), "m.json", &classical_model());
    let e = put(dir.path(), "e.json", &json!({"kind": "classical", "subset": ["a"]}));
    let out = dir.path().join("r.json");
    let r = dibelief(&["revise", &m, &e, "-o", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.raw);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, r.out);

    // Non-monotone update: (−1, 2) is no longer accepted after learning {a}.
    let u = put(dir.path(), "u.json", &json!([-1, 2]));
    let s = dibelief(&["member", out.to_str().unwrap(), &u]);
    assert_eq!(s.out["status"]["accepted"], "no");
}

#[test]
fn expand_by_a_proper_event_is_inconsistent() {
    let dir = TempDir::new().unwrap();
    let m = put(dir.path(), "m.json", &classical_model());
    let e = put(dir.path(), "e.json", &json!({"kind": "classical", "subset": ["a"]}));
    let r = dibelief(&["expand", &m, &e]);
    assert_eq!(r.code, 1);
    assert_eq!(r.out["inconsistent"], true);
    let unit = put(dir.path(), "u.json", &json!({"kind": "classical", "subset": ["a", "b"]}));
    assert_eq!(dibelief(&["expand", &m, &unit]).code, 0);
}

#[test]
fn contracting_the_unit_event_is_refused() {
    let dir = TempDir::new().unwrap();
    let m = put(dir.path(), "m.json", &classical_model());
    let unit = put(dir.path(), "u.json", &json!({"kind": "classical", "subset": ["a", "b"]}));
    assert_eq!(dibelief(&["contract", &m, &unit]).code, 2);
}

#[test]
fn quantum_revision_round_trips_as_a_derived_document() {
    let dir = TempDir::new().unwrap();
    let m = put(dir.path(), "m.json", &json!({"space": {"kind": "quantum", "dim": 2}, "desirable_generators": []}));
    let e = put(dir.path(), "e.json", &json!({"kind": "quantum", "subspace_basis": [[[1, 0], [0, 0]]]}));
    let out = dir.path().join("r.json");
    let r = dibelief(&["revise", &m, &e, "-o", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.raw);
    assert_eq!(r.out["derived"]["operation"], "revise");
    // diag(1, −5) is desirable after learning the first basis state.
    let u = put(dir.path(), "u.json", &json!([[[1, 0], [0, 0]], [[0, 0], [-5, 0]]]));
    let s = dibelief(&["member", out.to_str().unwrap(), &u]);
    assert_eq!(s.out["status"]["desirable"], "yes", "{}", s.raw);
}

#[test]
fn close_and_meet() {
    let dir = TempDir::new().unwrap();
    let a = put(dir.path(), "a.json", &json!({"accept": [[-1, 2]], "reject": []}));
    let r = dibelief(&["close", &a]);
    assert_eq!(r.code, 0, "{}", r.raw);
    let a = put(dir.path(), "b.json", &json!({"accept": [[-1, 0]], "reject": []}));
    assert_eq!(dibelief(&["close", &a]).code, 1);

    let e1 = put(dir.path(), "e1.json", &json!({"kind": "classical", "subset": ["a", "b"]}));
    let e2 = put(dir.path(), "e2.json", &json!({"kind": "classical", "subset": ["b", "c"]}));
    assert_eq!(dibelief(&["meet", &e1, &e2]).out["subset"], json!(["b"]));
}

#[test]
fn verify_is_deterministic_and_quiet_drops_witnesses() {
    let args = ["verify", "--suite", "events", "--space", "classical", "--trials", "30", "--seed", "7"];
    let a = dibelief(&args);
    let b = dibelief(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.raw, b.raw);
    assert_eq!(a.out["status"], "pass");
    let q = dibelief(&["--quiet", "verify", "--suite", "contraction", "--trials", "12", "--seed", "3"]);
    assert!(!q.raw.contains("\"witness\""));
}

#[test]
fn hunt_witness_replays_through_verify() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("w.json");
    let r = dibelief(&["hunt", "--axiom", "BC7", "--trials", "2000", "--seed", "1", "-o", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.raw);
    let v = dibelief(&["verify", "--suite", "contraction", "--instance", out.to_str().unwrap()]);
    let bc7 = v.out["reports"][0]["results"].as_array().unwrap().iter().find(|x| x["axiom"] == "BC7").unwrap().clone();
    assert_eq!(bc7["outcome"], "expected-counterexample");
    assert_eq!(v.code, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dibelief(&["verify", "--suite", "nonsense"]).code, 2);
    assert_eq!(dibelief(&["member", "/nonexistent/m.json", "/nonexistent/u.json"]).code, 2);
}

#[test]
fn classical_event_suite_passes_at_scale() {
    let r = dibelief(&["--quiet", "verify", "--suite", "events", "--space", "classical", "--trials", "500", "--seed", "7"]);
    assert_eq!(r.code, 0, "{}", r.raw);
    assert_eq!(r.out["status"], "pass");
}
