use std::path::Path;

use fwe_cli::run;
use serde_json::Value;

fn fwe(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fwe").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn with_catalog<'a>(path: &'a Path, args: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["--catalog", path.to_str().unwrap()];
    v.extend_from_slice(args);
    v
}

#[test]
fn search_reports_new_quadratic_candidates() {
    let (code, out, _) = fwe(&["search", "--degree", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("|A(4,q)| = 32*(3*q - 4)*(q - 2)*(q^2 - 8*q + 8)"), "{out}");
    assert!(out.contains("q = 4+2*sqrt(2) (new;"));
    assert!(out.contains("q = 2 (known;"));
}

#[test]
fn search_json_and_parity_mismatch() {
    let (code, out, _) = fwe(&["search", "--degree", "5", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["parity"], "odd");
    let (code, _, err) = fwe(&["search", "--degree", "8", "--parity", "odd"]);
    assert_eq!(code, 1);
    assert!(err.contains("parity"));
}

#[test]
fn construct_phi4() {
    let (code, out, _) = fwe(&["construct", "--n", "2", "--parity", "even", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "W = x^4 - 6*x^2*y^2 + y^4");
}

#[test]
fn zeta_of_phi4() {
    let (code, out, _) = fwe(&["zeta", "--entry", "phi4", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["two_g"], 2);
    assert_eq!(v["class"], "anti-invariant");
    assert_eq!(v["functional_equation"], true);
}

#[test]
fn rh_verdicts_and_exit_codes() {
    let (code, out, _) = fwe(&["rh", "--entry", "phi8plus", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "fails");
    assert_eq!(v["method"], "ivt-witness");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
    let (code, out, _) = fwe(&["rh", "--entry", "phi8minus"]);
    assert_eq!(code, 0);
    assert!(out.contains("status: holds"));
    let (code, _, _) = fwe(&["rh", "--entry", "phi4", "--tolerance", "1/1000"]);
    assert_eq!(code, 0);
    let (code, _, _) = fwe(&["rh", "--entry", "phi4", "--tolerance", "-1e-5"]);
    assert_eq!(code, 1);
}

#[test]
fn rh_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let (_, shown, _) = fwe(&["catalog", "show", "phi6", "--json"]);
    std::fs::write(&path, shown).unwrap();
    let (code, out, _) = fwe(&["rh", "--file", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "holds");
}

#[test]
fn extremal_in_ring_one() {
    let (code, out, _) = fwe(&["extremal", "--ring", "ri-minus", "--degree", "12"]);
    assert_eq!(code, 0);
    assert!(out.contains("= x^12 - 33*x^8*y^4 - 33*x^4*y^8 + y^12"), "{out}");
    assert!(out.contains("d = 4"));
    let (code, out, _) = fwe(&["extremal", "--ring", "ri-minus", "--degree", "2"]);
    assert_eq!(code, 3);
    assert!(out.contains("no products"));
}

#[test]
fn extremal_from_generator_files() {
    let dir = tempfile::tempdir().unwrap();
    let (inv, anti) = (dir.path().join("g.json"), dir.path().join("f.json"));
    std::fs::write(&inv, r#"{"n": 2, "coeffs": ["1", "0", "1"]}"#).unwrap();
    std::fs::write(&anti, r#"{"n": 4, "coeffs": ["1", "0", "-6", "0", "1"]}"#).unwrap();
    let (code, out, err) = fwe(&[
        "extremal",
        "--gen-inv",
        inv.to_str().unwrap(),
        "--gen-anti",
        anti.to_str().unwrap(),
        "--q",
        "2",
        "--degree",
        "12",
        "--json",
    ]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["d"], 4);
}

#[test]
fn conjecture_small_range() {
    let (code, out, _) = fwe(&["conjecture", "--max-n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 7);
    assert!(out.lines().all(|l| l.contains("holds")));
    let (code, _, _) = fwe(&["conjecture", "--max-n", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn catalog_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.json");
    let add = ["catalog", "add", "--name", "c1", "--q", "2", "--coeffs", "1,0,-6,0,1"];
    let (code, out, err) = fwe(&with_catalog(&path, &add));
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("anti-invariant"));
    let (code, _, err) = fwe(&with_catalog(&path, &add));
    assert_eq!(code, 1);
    assert!(err.contains("c1"));
    let (code, out, _) = fwe(&with_catalog(&path, &["catalog", "list"]));
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("c1 ") && l.ends_with("discovered")));
    let (code, out, _) = fwe(&with_catalog(&path, &["catalog", "show", "c1", "--json"]));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["two_g"], 2);
    assert_eq!(v["rh_status"], "holds");
    let (code, out, _) = fwe(&with_catalog(&path, &["rh", "--entry", "c1"]));
    assert_eq!(code, 0);
    assert!(out.contains("holds"));
}

#[test]
fn catalog_rejects_builtin_names_and_corrupt_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.json");
    let add = ["catalog", "add", "--name", "phi4", "--q", "2", "--coeffs", "1,0,-6,0,1"];
    assert_eq!(fwe(&with_catalog(&path, &add)).0, 1);
    std::fs::write(&path, "{ not json").unwrap();
    let (code, _, err) = fwe(&with_catalog(&path, &["catalog", "list"]));
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn usage_errors() {
    assert_eq!(fwe(&["bogus"]).0, 1);
    assert_eq!(fwe(&["zeta"]).0, 1);
    assert_eq!(fwe(&["zeta", "--entry", "nope"]).0, 1);
    assert_eq!(fwe(&["construct", "--n", "2", "--parity", "even", "--q", "sqrt("]).0, 1);
    let (code, out, _) = fwe(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("search"));
}

#[test]
fn catalog_show_builtins() {
    let (code, out, _) = fwe(&["catalog", "show", "W12"]);
    assert_eq!(code, 0);
    assert!(out.contains("coefficients: 1, 0, 0, 0, -33, 0, 0, 0, -33, 0, 0, 0, 1"), "{out}");
    let (code, out, _) = fwe(&["catalog", "show", "phi10minus", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coeffs"][2], "-45+18*sqrt(5)");
    assert_eq!(v["source"], "builtin");
}
