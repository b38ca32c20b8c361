use std::process::{Command, Output};

use qaw_core::numfield::{parse_rational, rat};
use qaw_core::qclassical::{askey_wilson_pn, big_qjacobi, little_qjacobi, AWParams, BigJacobiParams, LittleJacobiParams};
use serde_json::Value;

fn qaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaw"))
        .args(args)
        .output()
        .expect("failed to launch qaw")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is not JSON")
}

const AW_ARGS: &[&str] = &[
    "eval-aw", "--backend", "exact", "--n", "1", "--q", "1/2", "--a", "-1/2", "--b", "-1/2", "--c", "1/2", "--d", "1/2",
];

#[test]
fn eval_aw_matches_library() {
    let mut args = AW_ARGS.to_vec();
    args.extend(["--x", "0,1/3"]);
    let out = qaw(&args);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);

    let p = AWParams::new(rat(-1, 2), rat(-1, 2), rat(1, 2), rat(1, 2), rat(1, 2));
    let poly = askey_wilson_pn(1, &p).unwrap();
    for (row, x) in rows.iter().zip([rat(0, 1), rat(1, 3)]) {
        let got = parse_rational(row["value"].as_str().unwrap()).unwrap();
        assert_eq!(got, poly.eval(&x));
    }
    assert_eq!(rows[0]["value"], "0");
}

#[test]
fn eval_aw_float_backend_agrees_with_exact() {
    let mut exact = AW_ARGS.to_vec();
    exact.extend(["--x", "1/4"]);
    let e = json(&qaw(&exact));
    let mut float = exact.clone();
    float[2] = "float";
    let f = json(&qaw(&float));
    let ev = parse_rational(e["value"].as_str().unwrap()).unwrap();
    let fv = f["value"].as_f64().unwrap();
    assert!((qaw_core::Field::to_float(&ev) - fv).abs() < 1e-14);
}

#[test]
fn eval_qjacobi_matches_library() {
    let out = qaw(&[
        "eval-bigq", "--backend", "exact", "--n", "2", "--q", "1/3", "--q-alpha", "1/2", "--q-beta", "1/4", "--c", "3/2", "--d",
        "1", "--x", "2/5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let p = BigJacobiParams { q_alpha: rat(1, 2), q_beta: rat(1, 4), c: rat(3, 2), d: rat(1, 1), q: rat(1, 3) };
    let want = big_qjacobi(2, &p).unwrap().eval(&rat(2, 5));
    assert_eq!(parse_rational(json(&out)["value"].as_str().unwrap()).unwrap(), want);

    let out = qaw(&[
        "eval-littleq", "--backend", "exact", "--n", "3", "--q", "1/2", "--q-alpha", "1/2", "--q-beta", "1/3", "--x", "1/7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let p = LittleJacobiParams { q_alpha: rat(1, 2), q_beta: rat(1, 3), q: rat(1, 2) };
    let want = little_qjacobi(3, &p).unwrap().eval(&rat(1, 7));
    assert_eq!(parse_rational(json(&out)["value"].as_str().unwrap()).unwrap(), want);
}

#[test]
fn exact_backend_rejects_irrational_literal() {
    let out = qaw(&[
        "eval-aw", "--backend", "exact", "--n", "1", "--q", "1e-1", "--a", "0", "--b", "0", "--c", "0", "--d", "0", "--x", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn backend_is_mandatory() {
    let out = qaw(&["eval-littleq", "--n", "1", "--q", "1/2", "--q-alpha", "1/2", "--q-beta", "1/2", "--x", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(qaw(&["check-qdiff", "--bogus"]).status.code(), Some(1));
    assert_eq!(qaw(&["bogus"]).status.code(), Some(1));
    assert_eq!(qaw(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_qhc_example() {
    let out = qaw(&["check-qhc", "--n", "2", "--l", "1", "--s", "1", "--t", "1", "--s2", "1", "--t2", "1", "--h", "3,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["residual_zero"], true);
}

#[test]
fn measure_example_has_one_atom_family() {
    let out = qaw(&["measure", "--q", "0.5", "--a", "1.2", "--b", "0.1", "--c", "0.1", "--d", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let m = json(&out);
    let atoms = m["atoms"].as_array().unwrap();
    assert_eq!(atoms.len(), 1);
    assert_eq!(atoms[0]["family"], "a");
    assert!((atoms[0]["point"].as_f64().unwrap() - (1.2 + 1.0 / 1.2) / 2.0).abs() < 1e-15);
    assert!((m["norm"].as_f64().unwrap() - 15.5485488).abs() < 1e-6);
}

#[test]
fn csv_output_has_fixed_header() {
    let out = qaw(&["--format", "csv", "check-spherical", "--n", "2", "--l", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,l,s,t,s2,t2,residual_zero,collapsed,matched_AW"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn spherical_campaign_report_schema() {
    let out = qaw(&["check-spherical", "--n", "2,3", "--l", "1", "--s", "1,2", "--t2", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        for key in ["n", "l", "s", "t", "s2", "t2", "residual_zero", "collapsed", "matched_AW"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["matched_AW"], true);
    }
}

#[test]
fn failed_verification_exits_with_2() {
    let out = qaw(&["check-orth", "--q", "0.5", "--a", "0.3", "--b", "0.2", "--c", "-0.4", "--d", "0.1", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["orthogonal"], false);
}

#[test]
fn verification_commands_pass() {
    for args in [
        &["check-qdiff", "--trials", "4", "--max-degree", "3", "--seed", "7"][..],
        &["check-orth", "--q", "0.5", "--a", "0.3", "--b", "0.2", "--c", "-0.4", "--d", "0.1"],
        &["check-limit", "--family", "big"],
        &["check-limit", "--family", "little"],
    ] {
        let out = qaw(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["measure", "--q", "0.5", "--a", "1.2", "--b", "0.1", "--c", "0.1", "--d", "0.1"][..],
        &["check-orth", "--q", "0.3", "--a", "0.5", "--b", "-0.2", "--c", "0.1", "--d", "0.25"],
        &["check-qdiff", "--trials", "3", "--max-degree", "2", "--seed", "11"],
        &["--format", "csv", "check-spherical", "--n", "2,3", "--l", "1,2"],
    ] {
        let a = qaw(args);
        let b = qaw(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("limit.csv");
    let out = qaw(&["check-limit", "--family", "little", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("family,n,sign,"));
}
