use std::process::{Command, Output};

use serde_json::Value;

fn u11(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_u11"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn correspond_example() {
    let out = u11(&["correspond", "--p", "3", "--r", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let js = json_of(&out);
    assert_eq!(js["results"]["parameter"]["r"], 7);
    let fiber: Vec<(u64, u64)> = js["results"]["fiber"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| (i["r"].as_u64().unwrap(), i["k"].as_u64().unwrap()))
        .collect();
    assert_eq!(fiber, vec![(0, 0), (2, 1)]);
    assert_eq!(js["violations"], serde_json::json!([]));
    assert_eq!(js["timing"], Value::Null);
}

#[test]
fn defring_example() {
    let out = u11(&["defring", "--shape", "w"]);
    assert_eq!(out.status.code(), Some(0));
    let js = json_of(&out);
    assert_eq!(js["results"]["presentation"]["relations"], serde_json::json!(["c11*c22 + p"]));
    assert_eq!(js["results"]["presentation"]["extra"], serde_json::json!([2, 4]));
}

#[test]
fn classify_example() {
    let js = json_of(&u11(&["classify", "--p", "3", "--f", "1"]));
    assert_eq!(js["results"]["count"], 20);
    assert_eq!(js["results"]["labels"].as_array().unwrap().len(), 20);
}

#[test]
fn verify_examples_are_clean() {
    for args in [
        &["verify", "correspondence", "--p", "3", "--f", "2"][..],
        &["verify", "galois", "--p", "5", "--n", "2"],
        &["verify", "kisin", "--p", "3", "--samples", "1000"],
        &["verify", "arith", "--p", "5", "--samples", "200"],
        &["verify", "reps", "--p", "2", "--f", "2"],
        &["verify", "all", "--p", "3", "--samples", "100"],
    ] {
        let out = u11(args);
        let js = json_of(&out);
        assert_eq!(js["violations"], serde_json::json!([]), "{args:?}");
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        for prop in js["results"]["properties"].as_array().unwrap() {
            assert_eq!(prop["passed"], true, "{args:?} {prop}");
        }
    }
}

#[test]
fn galois_report_surfaces_the_literal_rule() {
    let js = json_of(&u11(&["verify", "galois", "--p", "3"]));
    let obs = &js["results"]["observations"]["galois.literal-rule"];
    assert!(obs["indices_where_literal_rule_is_not_conjugacy"].as_u64().unwrap() > 0);
    let out = u11(&["param-equiv", "--p", "3", "--r", "7"]);
    let js = json_of(&out);
    // −pr − (p + 1) fixes r = 7, while −pr sends it to 3
    assert_eq!(js["results"]["partner"]["r"], 7);
    assert_eq!(js["results"]["partner_conjugate"], true);
    assert_eq!(js["results"]["literal_rule_partner"]["r"], 3);
    assert_eq!(js["results"]["literal_rule_conjugate"], false);
    let js = json_of(&u11(&["param-equiv", "--p", "3", "--r", "1"]));
    assert_eq!(js["results"]["literal_rule_partner"]["r"], 5);
    assert_eq!(js["results"]["literal_rule_conjugate"], false);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "kisin", "--p", "5", "--samples", "50", "--seed", "9"];
    assert_eq!(u11(&args).stdout, u11(&args).stdout);
    let args = ["shape", "--shape", "w", "--seed", "4"];
    assert_eq!(u11(&args).stdout, u11(&args).stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(u11(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(u11(&["packet", "--p", "3"]).status.code(), Some(2));
    assert_eq!(u11(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(u11(&["defring"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_3() {
    // w over an unramified ring of length 2 has no points
    let out = u11(&["shape", "--shape", "w", "--ring", "galois"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["error"]["kind"], "solvability");
    // equal embedding values
    let out = u11(&["orientation", "--p", "5", "--a", "3", "--b", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(u11(&["classify", "--p", "9"]).status.code(), Some(3));
    assert_eq!(u11(&["correspond", "--p", "2", "--r", "0", "--k", "0"]).status.code(), Some(3));
    assert_eq!(u11(&["packet", "--r", "5", "--k", "0"]).status.code(), Some(3));
}

#[test]
fn lambda_selection() {
    let by_index = json_of(&u11(&["packet", "--p", "3", "--f", "2", "--r", "1", "--k", "0", "--lambda-index", "2"]));
    let lambda = by_index["results"]["index"]["lambda"].clone();
    let coeffs: Vec<String> = lambda
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.to_string())
        .collect();
    let by_value = json_of(&u11(&[
        "packet", "--p", "3", "--f", "2", "--r", "1", "--k", "0", "--lambda", &coeffs.join(","),
    ]));
    assert_eq!(by_index["results"], by_value["results"]);
    assert_eq!(u11(&["packet", "--r", "1", "--k", "0", "--lambda", "0"]).status.code(), Some(3));
}

#[test]
fn text_output_projects_the_report() {
    let out = u11(&["ftsd", "--p", "3", "--a", "2", "--b", "6", "--output", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: ftsd"));
    assert!(text.contains("ftsd: true"));
    assert!(text.contains("violations: none"));
}

#[test]
fn timing_is_opt_in() {
    let js = json_of(&u11(&["defring", "--shape", "t", "--timing"]));
    assert!(js["timing"]["elapsed_ms"].is_number());
}
