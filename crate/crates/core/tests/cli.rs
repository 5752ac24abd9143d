use std::process::Command;

use serde_json::Value;

fn toroidalg(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_toroidalg")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v)
}

#[test]
fn verify_tkk_on_baby() {
    let (code, v) = toroidalg(&["verify-tkk", "--example", "baby-tkk"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    let s = &v["suites"]["verify-tkk"];
    assert_eq!(s["mismatches"], 0);
    let dims: Vec<u64> = s["dims"].as_object().unwrap().values().map(|d| d["tkk"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![3, 3, 3, 1]);
}

#[test]
fn tkk_subcommand_with_cosets() {
    let (code, v) = toroidalg(&["tkk", "--cosets", "(0,0),(0,1),(1,0)", "verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["suites"]["verify-tkk"]["total_identity"]["rhs"], 10);
}

#[test]
fn affine_factorize_reports_the_word() {
    let (code, v) = toroidalg(&["affine", "factorize", "--example", "baby-tkk"]);
    assert_eq!(code, 0);
    assert_eq!(v["suites"]["factorize"]["word_action"], "r1r2r0r1(0 2)");
    assert_eq!(v["suites"]["factorize"]["matches_reference"], true);
}

#[test]
fn malformed_cosets_exit_nonzero() {
    let (code, v) = toroidalg(&["tkk", "--cosets", "(0,0),(0,", "verify"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "config");
}

#[test]
fn unknown_example_and_bad_cocycle() {
    assert_eq!(toroidalg(&["verify-algebra", "--example", "nope"]).0, 2);
    assert_eq!(toroidalg(&["verify-algebra", "--example", "baby-tkk", "--cocycle", "1"]).0, 2);
}

#[test]
fn config_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"example":"custom","algebra":"so","cosets":[[0,0,0],[1,0,0],[0,1,0],[0,0,1]],"orders":[2,2,2],"seed":3}"#).unwrap();
    let out = dir.path().join("report.json");
    let (code, _) = toroidalg(&["verify-tkk", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["suites"]["verify-tkk"]["r"], 4);
}

#[test]
fn export_algebra_round_trips() {
    let (code, v) = toroidalg(&["export-algebra", "--example", "baby-tkk"]);
    assert_eq!(code, 0);
    let j: toroidalg::liestruct::AlgebraJson = serde_json::from_value(v["algebra"].clone()).unwrap();
    let l = toroidalg::liestruct::StructLie::from_json(&j).unwrap();
    assert_eq!(l.dim(), 10);
}
