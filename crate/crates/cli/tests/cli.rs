use std::process::{Command, Output};

use serde_json::Value;

fn charfactor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charfactor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

const TWO_NINE: &[&str] = &["--p", "2", "--pp", "9", "--ap", "3", "--b", "1", "--bp", "1", "--c", "1"];

#[test]
fn verify_certificate() {
    let mut args = vec!["verify", "--kind", "main"];
    args.extend_from_slice(TWO_NINE);
    args.extend_from_slice(&["--order", "300", "--json"]);
    let out = charfactor(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with(
        r#"{"kind":"main","p":2,"pp":9,"a":2,"ap":3,"b":1,"bp":1,"c":1,"B":1,"n":3,"order":300,"pairs":[{"r":1,"s":2,"type":2,"weight":3},"#
    ));
    assert!(text.contains(r#"],"match":true,"sign_variant":"as_stated","first_mismatch":null,"lhs_prefix":["#));
    assert!(text.contains(r#"],"rhs_prefix":["#));
    let cert = json(&out);
    assert_eq!(cert["match"], true);
    assert_eq!(cert["sign_variant"], "as_stated");
    assert_eq!(cert["first_mismatch"], Value::Null);
    assert_eq!(cert["n"], 3);
    assert_eq!(cert["pairs"].as_array().unwrap().len(), 3);
    assert_eq!(cert["lhs_prefix"].as_array().unwrap().len(), 16);
    assert_eq!(cert["lhs_prefix"], cert["rhs_prefix"]);
}

#[test]
fn verify_table_output() {
    let mut args = vec!["verify"];
    args.extend_from_slice(TWO_NINE);
    let out = charfactor(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("match (as_stated)"), "{text}");
    assert!(text.contains("lhs prefix    1 -1 -1 1 -1 0 2"), "{text}");
}

#[test]
fn even_kind_records_variant() {
    let out = charfactor(&[
        "verify", "--kind", "main-b-even", "--p", "4", "--pp", "3", "--ap", "3", "--c", "1", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["sign_variant"], "swapped");
}

#[test]
fn invalid_parameters_exit_2() {
    let out = charfactor(&["verify", "--p", "2", "--pp", "9", "--ap", "3", "--c", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("range"));

    let out = charfactor(&["verify", "--kind", "main-a-even", "--p", "2", "--pp", "9", "--ap", "3", "--c", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = charfactor(&["verify", "--kind", "bogus"]);
    assert_eq!(out.status.code(), Some(2));

    let out = charfactor(&["scan", "--ap", "3", "--c", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quintuple_kind_on_triple_tuple_fails_validation() {
    let out = charfactor(&["verify", "--kind", "quint", "--p", "2", "--pp", "9", "--ap", "3", "--c", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn main_a_even_instance() {
    let out = charfactor(&[
        "verify", "--kind", "main-a-even", "--p", "4", "--pp", "5", "--ap", "5", "--c", "1", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["match"], true);
}

#[test]
fn scan_report() {
    let out = charfactor(&["scan", "--ap", "3", "--B", "1", "--c", "1", "--n", "3", "--order", "1000", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        r#"{"scheme":"triple","ap":3,"B":1,"c":1,"n":3,"order":1000,"covered":"case1","support":[0,1,2],"violations":[]}"#
    );
}

#[test]
fn scan_sweep_is_deterministic_across_thread_counts() {
    let args = ["scan", "--sweep", "12", "--order", "200", "--json"];
    let one = Command::new(env!("CARGO_BIN_EXE_charfactor"))
        .args(args)
        .env("CHARFACTOR_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_charfactor"))
        .args(args)
        .env("CHARFACTOR_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
    assert!(json(&one).as_array().unwrap().len() > 10);
}

#[test]
fn bad_thread_count_is_invalid() {
    let out = Command::new(env!("CARGO_BIN_EXE_charfactor"))
        .args(["verify", "--sweep", "20"])
        .env("CHARFACTOR_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_sweep() {
    let out = charfactor(&["verify", "--kind", "quint", "--sweep", "60", "--order", "80"]);
    // c = 0 tuples vanish on both sides and still match
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().last().unwrap().ends_with("identities matched"), "{text}");

    let out = charfactor(&["verify", "--kind", "main", "--sweep", "40", "--order", "60", "--json"]);
    let certs = json(&out);
    let certs = certs.as_array().unwrap();
    assert!(certs.iter().all(|c| c["match"] == true));
    let keys: Vec<(i64, i64)> = certs
        .iter()
        .map(|c| (c["p"].as_i64().unwrap(), c["pp"].as_i64().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn byte_identical_reruns() {
    let mut args = vec!["verify"];
    args.extend_from_slice(TWO_NINE);
    args.push("--json");
    assert_eq!(charfactor(&args).stdout, charfactor(&args).stdout);
}

#[test]
fn pairs_json() {
    let out = charfactor(&["pairs", "--scheme", "triple", "--p", "4", "--pp", "5", "--ap", "5", "--c", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        r#"[{"r":1,"s":4,"type":2,"weight":-5},{"r":3,"s":4,"type":1,"weight":0}]"#
    );
}

#[test]
fn phi_and_psi_agree() {
    let phi = charfactor(&["phi", "--ap", "3", "--c", "1", "--n", "3", "--order", "40", "--json"]);
    let psi = charfactor(&["psi", "--ap", "2", "--c", "1", "--n", "3", "--order", "40", "--json"]);
    assert_eq!(json(&phi)["coefficients"], json(&psi)["coefficients"]);
    let first: Vec<String> = json(&phi)["coefficients"].as_array().unwrap()[..7]
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(first, ["1", "-1", "-1", "1", "-1", "0", "2"]);
}

#[test]
fn realize_lists_tuples() {
    let out = charfactor(&["realize", "--scheme", "quintuple", "--ap", "2", "--c", "1", "--n", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    assert!(rows
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["p"] == 9 && r["pp"] == 2 && r["b"] == 1 && r["bp"] == 1));
}

#[test]
fn remark_and_selftest() {
    let out = charfactor(&["remark", "--ap", "5", "--c", "3", "--order", "100", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);
    assert_eq!(charfactor(&["remark", "--ap", "4", "--c", "1"]).status.code(), Some(2));

    let out = charfactor(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn uncovered_quadruple_with_sign_violation_exits_1() {
    // (q;q)_inf / (q^10;q^10)_inf has x_65 = 1 and x_75 = -1
    let out = charfactor(&["scan", "--ap", "3", "--B", "1", "--c", "1", "--n", "10", "--order", "100", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["covered"], "none");
    assert_eq!(report["violations"], serde_json::json!([{"j": 65, "lo": "1", "hi": "-1"}]));
}
