use std::process::{Command, Output};

use serde_json::Value;

fn pelltrib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pelltrib"))
        .args(args)
        .env_remove("PELLTRIB_OUTPUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses JSON output and checks it re-serializes byte for byte.
fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let o = pelltrib(&full);
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "round trip of {args:?}");
    (v, o.status.code().unwrap())
}

#[test]
fn trib_17() {
    let o = pelltrib(&["trib", "17"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "10609");
    let (v, code) = json(&["trib", "3", "--to", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"], serde_json::json!(["2", "4", "7"]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pelltrib(&[]).status.code(), Some(2));
    assert_eq!(pelltrib(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pelltrib(&["trib", "x"]).status.code(), Some(2));
    assert_eq!(pelltrib(&["--precision-bits", "8", "trib", "3"]).status.code(), Some(2));
    assert_eq!(pelltrib(&["--factoring-effort", "lots", "sqfree", "12"]).status.code(), Some(2));
    assert_eq!(pelltrib(&["cf", "sqrt:49"]).status.code(), Some(2));
    let (v, code) = json(&["pell-fundamental", "9"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "domain");
}

#[test]
fn environment_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_pelltrib"))
        .args(["sqfree", "112550880"])
        .env("PELLTRIB_OUTPUT", "json")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d"], "7034430");
    assert_eq!(v["y"], "4");
    assert_eq!(v["complete"], true);
}

#[test]
fn pell_and_continued_fractions() {
    let (v, _) = json(&["pell-fundamental", "61"]);
    assert_eq!((v["x1"].as_str(), v["y1"].as_str(), v["epsilon"].as_i64()), (Some("29718"), Some("3805"), Some(-1)));
    let (v, _) = json(&["pell-x", "3", "2"]);
    assert_eq!(v["x"], "7");
    let (v, _) = json(&["cf", "chi", "--terms", "35"]);
    assert_eq!(v["convergents"][33]["q"], "4999601640630812");
    assert_eq!(v["convergents"][34]["q"], "24351826693265967");
    let (v, _) = json(&["cf", "kappa:2:1", "--q-above", "1e17"]);
    assert_eq!(v["convergents"][31]["q"], "156827205418169727");
}

#[test]
fn linear_form_bounds() {
    let (v, code) = json(&["lmn", "--d-l", "3", "--log-b1", "1", "--log-b2", "1", "--b-prime", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["max_term"], "7.000000");
    let (_, code) = json(&["matveev", "--d-l", "3", "--big-d", "3", "--heights", "0.1,0.2"]);
    assert_eq!(code, 2, "A_j below 0.16 is outside the domain");
    let (v, code) = json(&["derive-bounds"]);
    assert_eq!(code, 0);
    assert_eq!(v["case_split_n2"], 476);
    assert_eq!(v["m2_final"], "16000000000000000000000");
}

#[test]
fn reduction_exit_codes() {
    let (v, code) = json(&["reduce", "--d", "2", "--b", "alpha^(3/2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"]["q"], "98827474195551603");
    assert_eq!(v["outcome"]["k_bound"], 48);
    // only the first convergent past 6M, which has xi < 0
    let (v, code) = json(&["--convergent-budget", "1", "reduce", "--x1", "10609", "--method", "standard"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "reduction_failed");
    assert_eq!(v["error"]["tried"][0]["status"], "non_positive");
    // X1 = T_90: kappa is within 1e-30 of 91 - chi, so only the
    // homogeneous form can decide
    let (v, code) = json(&["reduce", "--x1", "221352250573100549339469", "--epsilon", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"]["method"], "homogeneous");
    assert!(v["outcome"]["k_bound"].as_u64().unwrap() <= 60);
}

#[test]
fn small_search() {
    let (v, code) = json(&["solve-small"]);
    assert_eq!(code, 0);
    let got: Vec<(i64, u64, u64, String)> = v["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["epsilon"].as_i64().unwrap(), s["n1"].as_u64().unwrap(), s["m1"].as_u64().unwrap(), s["x1"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(got, vec![(-1, 3, 5, "1".into()), (1, 2, 5, "2".into())]);
}

#[test]
fn verify_theorem_matches() {
    let path = std::env::temp_dir().join(format!("pelltrib-report-{}.json", std::process::id()));
    let (v, code) = json(&["--jobs", "2", "verify-theorem", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["matches_theorem"], true);
    let ex = v["exceptional"].as_array().unwrap();
    assert_eq!(ex.len(), 2);
    assert_eq!(ex[0]["d"], "2");
    assert_eq!(ex[0]["pairs"], serde_json::json!([[1, 1], [1, 2], [3, 5]]));
    assert_eq!(ex[1]["d"], "3");
    assert_eq!(ex[1]["pairs"], serde_json::json!([[1, 3], [2, 5]]));
    for key in ["bounds", "cutoffs", "nontrivial", "records", "certificates"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, v);
    std::fs::remove_file(path).ok();
}
