//! Committed reports for the packaged examples, compared as JSON values
//! (key order does not matter). Regenerate with
//! `toroidalg <command> --example <name> --out tests/golden/<name>-<command>.json`.

use std::path::PathBuf;

use serde_json::Value;
use toroidalg::runner::{run, Command, RunConfig};

fn golden(example: &str, cmd: Command) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{example}-{}.json", cmd.as_str()));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let want: Value = serde_json::from_str(&text).unwrap();
    let got = run(&RunConfig::example(example), cmd);
    assert!(got.passed, "{example} {}", cmd.as_str());
    assert_eq!(got.value, want, "{example} {} drifted from its golden report", cmd.as_str());
}

#[test]
fn baby_algebra() {
    golden("baby-tkk", Command::VerifyAlgebra);
}

#[test]
fn full_algebra() {
    golden("full-tkk", Command::VerifyAlgebra);
}

#[test]
fn baby_tkk() {
    golden("baby-tkk", Command::VerifyTkk);
}

#[test]
fn full_tkk() {
    golden("full-tkk", Command::VerifyTkk);
}

#[test]
fn baby_factorize() {
    golden("baby-tkk", Command::Factorize);
}

#[test]
fn full_factorize() {
    golden("full-tkk", Command::Factorize);
}

#[test]
fn baby_rep() {
    golden("baby-tkk", Command::VerifyRep);
}
