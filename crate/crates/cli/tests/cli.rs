use std::process::{Command, Output};

use monodromy_core::unipotent::{Basis, MonodromyTriple, UnipotentProblem};

fn hgmono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgmono")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = hgmono(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn factor_quintic_and_last_row() {
    let v = json(&["factor", "--alphas", "1/5,2/5,3/5,4/5"]);
    assert_eq!(v["a"], serde_json::json!([5]));
    assert_eq!(v["b"], serde_json::json!([1]));
    assert_eq!(v["C"], "3125");
    assert_eq!(v["d"], "5");
    let v = json(&["factor", "--alphas", "1/6,1/2,1/2,5/6"]);
    assert_eq!((v["C"].as_str(), v["d"].as_str()), (Some("6912"), Some("4")));
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(hgmono(&["factor", "--alphas", "1/3,1/4"]).status.code(), Some(2));
    assert_eq!(hgmono(&["factor", "--alphas", "1/3,x"]).status.code(), Some(2));
    assert_eq!(hgmono(&["monodromy", "--alphas", "1/2,1/2", "--basis", "nope"]).status.code(), Some(2));
    assert_eq!(hgmono(&["nonresonant", "--alphas", "1/5,1/2", "--betas", "1,1/2"]).status.code(), Some(2));
    assert_eq!(hgmono(&["table", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn monodromy_n3_text_is_exact() {
    let o = hgmono(&["monodromy", "--alphas", "1/2,1/2,1/2", "--basis", "normalized-frobenius"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let m1 = s.split("M1 =\n").nth(1).unwrap();
    let rows: Vec<&str> = m1.lines().take(3).collect();
    assert_eq!(rows, ["[  0  0  -1/8 ]", "[  0  1     0 ]", "[ -8  0     0 ]"]);
    assert!(!s.contains('.'), "text output must not contain floats");
}

#[test]
fn monodromy_json_round_trips() {
    for basis in ["normalized-frobenius", "frobenius", "mellin-barnes"] {
        let v = json(&["monodromy", "--alphas", "1/5,2/5,3/5,4/5", "--basis", basis]);
        assert_eq!(v["n"], 4);
        assert_eq!(v["basis"], basis);
        let t: MonodromyTriple = serde_json::from_value(v["matrices"].clone()).unwrap();
        let p = UnipotentProblem::parse("1/5,2/5,3/5,4/5").unwrap();
        assert_eq!(t, p.triple(basis.parse::<Basis>().unwrap()).unwrap());
        let gens: Vec<&str> = v["generators"].as_array().unwrap().iter().map(|g| g.as_str().unwrap()).collect();
        let expected: &[&str] = if basis == "frobenius" { &["g3", "lambda"] } else { &["g3"] };
        assert_eq!(gens, expected);
    }
}

#[test]
fn mellin_barnes_basis_is_integral() {
    let v = json(&["monodromy", "--alphas", "1/5,2/5,3/5,4/5", "--basis", "mellin-barnes"]);
    let t: MonodromyTriple = serde_json::from_value(v["matrices"].clone()).unwrap();
    for (_, m) in t.matrices() {
        let rows = m.as_rational().expect("rational entries");
        assert!(rows.iter().flatten().all(|r| r.is_integer()));
    }
}

#[test]
fn tables() {
    let s = stdout(&hgmono(&["table", "--n", "4"]));
    assert_eq!(s.lines().filter(|l| l.starts_with('(')).count(), 14);
    assert!(s.contains("4096*"));
    let v = json(&["table", "--n", "3"]);
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 4);
    assert!(v["table"]["rows"].as_array().unwrap().iter().all(|r| r["checks_pass"] == true));
    let v = json(&["table", "--n", "2"]);
    let d: Vec<&str> = v["table"]["rows"].as_array().unwrap().iter().map(|r| r["columns"][0][1].as_str().unwrap()).collect();
    assert_eq!(d, ["4", "3", "2", "1"]);
    let v = json(&["table", "--n", "2", "--w-form"]);
    assert!(v["w_form"]["common"].is_array());
}

#[test]
fn verify_exit_codes() {
    let o = hgmono(&["verify", "--alphas", "1/2,1/2", "--z", "-1/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&["verify", "--alphas", "1/2,1/2", "--z", "-1/2"]);
    assert!(v["residual"].as_f64().unwrap() < 1e-6);
    // a truncated series cannot meet the tolerance
    assert_eq!(hgmono(&["verify", "--alphas", "1/2,1/2", "--terms", "5"]).status.code(), Some(1));
    let o = hgmono(&["verify", "--alphas", "1/5,2/5", "--betas", "1,1/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn series_quintic() {
    let v = json(&["series", "--alphas", "1/5,2/5,3/5,4/5", "--terms", "60"]);
    let c = v["coefficients"].as_array().unwrap();
    assert_eq!(c.len(), 60);
    assert_eq!(&c[..3], &["1", "120", "113400"]);
}

#[test]
fn nonresonant_report() {
    let v = json(&["nonresonant", "--alphas", "1/5,2/5", "--betas", "1,1/2"]);
    assert!(v["relation_residual"].as_f64().unwrap() < 1e-10);
    assert!(v["conjugation_gap"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["M0"][1][1][0].as_f64().unwrap(), -1.0);
}

#[test]
fn out_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let p = path.to_str().unwrap();
    let args = ["monodromy", "--alphas", "1/3,1/3,2/3,2/3", "--format", "json", "--out", p];
    assert!(hgmono(&args).status.success());
    let first = std::fs::read(&path).unwrap();
    assert!(hgmono(&args).status.success());
    assert_eq!(first, std::fs::read(&path).unwrap());
    assert!(stdout(&hgmono(&args)).is_empty());
}
