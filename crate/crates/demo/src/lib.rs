//! Browser bindings. Each export takes plain strings and returns a JSON
//! string; errors come back as `{"error": ...}` rather than exceptions.

use serde_json::{json, Value};
use toroidalg::runner::{self, Command, CosetList, RunConfig, Setup};
use toroidalg::toroidal::{TermJson, ToroidalElement};
use wasm_bindgen::prelude::wasm_bindgen;

fn to_text(v: Result<Value, String>) -> String {
    let v = v.unwrap_or_else(|e| json!({ "error": e }));
    serde_json::to_string_pretty(&v).expect("json values serialize")
}

fn custom(cosets: &str) -> RunConfig {
    RunConfig { cosets: Some(CosetList::Text(cosets.into())), ..Default::default() }
}

pub fn tkk_report(cosets: &str) -> Result<Value, String> {
    let r = runner::run(&custom(cosets), Command::VerifyTkk);
    match r.value.get("error") {
        Some(e) => Err(e["message"].as_str().unwrap_or("error").to_string()),
        None => Ok(r.value["suites"]["verify-tkk"].clone()),
    }
}

pub fn factorization(example: &str) -> Result<Value, String> {
    let r = runner::run(&RunConfig::example(example), Command::Factorize);
    match r.value.get("error") {
        Some(e) => Err(e["message"].as_str().unwrap_or("error").to_string()),
        None => Ok(r.value["suites"]["factorize"].clone()),
    }
}

/// `[x, y]` in the toroidal algebra for `cosets`, with elements in the
/// `{degree, kind, index, coeff}` list format.
pub fn toroidal_bracket(cosets: &str, mu: &str, nu: &str, x: &str, y: &str) -> Result<Value, String> {
    let s = Setup::resolve(&custom(cosets)).map_err(|e| e.to_string())?;
    let q = |t: &str| toroidalg::cycfield::parse_rat(t.trim()).map_err(|e| format!("{t:?}: {e}"));
    let ctx = s.context(q(mu)?, q(nu)?).map_err(|e| e.to_string())?;
    let parse = |t: &str| -> Result<ToroidalElement, String> {
        let terms: Vec<TermJson> = serde_json::from_str(t).map_err(|e| e.to_string())?;
        ToroidalElement::from_json(&terms).map_err(|e| e.to_string())
    };
    let z = ctx.bracket(&parse(x)?, &parse(y)?).map_err(|e| e.to_string())?;
    Ok(json!({
        "bracket": z.to_json(),
        "basis": ctx.algebra.labels,
        "cosets": ctx.coset,
        "m0": ctx.m0(),
    }))
}

#[wasm_bindgen(js_name = tkkVerify)]
pub fn tkk_verify_js(cosets: &str) -> String {
    to_text(tkk_report(cosets))
}

#[wasm_bindgen(js_name = factorize)]
pub fn factorize_js(example: &str) -> String {
    to_text(factorization(example))
}

#[wasm_bindgen(js_name = toroidalBracket)]
pub fn toroidal_bracket_js(cosets: &str, mu: &str, nu: &str, x: &str, y: &str) -> String {
    to_text(toroidal_bracket(cosets, mu, nu, x, y))
}
