use toroidalg_demo::{factorization, tkk_report, toroidal_bracket};

const BABY: &str = "(0,0),(0,1),(1,0)";

#[test]
fn tkk_report_for_baby() {
    let v = tkk_report(BABY).unwrap();
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["r"], 3);
    assert!(tkk_report("(0,0),(1").is_err());
}

#[test]
fn factorization_word() {
    let v = factorization("baby-tkk").unwrap();
    assert_eq!(v["matches_reference"], true);
    assert!(factorization("nope").is_err());
}

#[test]
fn derivation_bracket() {
    // [t0 d0, t0^-1 d0] with mu = 1: -2 d0 + k0 (t0 has scaled exponent m0 = 2).
    let d = |t0: i64| format!(r#"[{{"degree":[{t0},0],"kind":"D","index":0,"coeff":"1"}}]"#);
    let v = toroidal_bracket(BABY, "1", "0", &d(2), &d(-2)).unwrap();
    let terms = v["bracket"].as_array().unwrap();
    assert_eq!(terms.len(), 2, "{v}");
    assert!(toroidal_bracket(BABY, "x", "0", &d(2), &d(-2)).is_err());
}
