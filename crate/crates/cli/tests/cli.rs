use std::process::{Command, Output};

use serde_json::Value;

fn voa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voa"))
        .args(args)
        .env("VOA_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = voa(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json output");
    (out.status.code().unwrap(), v)
}

#[test]
fn verify_symbolic() {
    let (code, v) = json(&["verify", "--level", "k"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert_eq!(checks.iter().map(|c| c["pole_order"].as_i64().unwrap()).max(), Some(4));
}

#[test]
fn critical_routing() {
    let (code, a) = json(&["verify", "--level", "-3"]);
    assert_eq!(code, 0);
    assert_eq!(a["level"], "critical");
    let (_, b) = json(&["verify-realisation", "--level", "critical"]);
    assert_eq!(a["checks"], b["checks"]);
    let ss: Vec<_> = b["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pair"][0] == "S" && c["pair"][1] == "S")
        .collect();
    assert!(!ss.is_empty() && ss.iter().all(|c| c["computed"] == "0"));
}

#[test]
fn verify_realisation_report_fields() {
    let (code, v) = json(&["verify-realisation", "--level", "-9/4", "--depth", "2"]);
    assert_eq!(code, 0);
    for c in v["checks"].as_array().unwrap() {
        for key in ["pair", "pole_order", "expected", "computed", "pass"] {
            assert!(c.get(key).is_some());
        }
        assert!(c["pole_order"].as_i64().unwrap() <= 2);
    }
}

#[test]
fn classify_examples() {
    let (code, v) = json(&["classify", "--level", "-9/4", "--delta", "0", "--w", "0", "--lambda", "1/3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "irreducible");
    let (_, v) = json(&["classify", "--level", "-9/4", "--delta", "0", "--w", "0", "--lambda", "0"]);
    assert_eq!(v["status"], "reducible");
    assert_eq!(v["maximal_mu"], "0");
    assert_eq!(v["top_weights"][0], "1/2");
    let (_, v) = json(&["classify", "--level", "-1", "--delta", "0", "--w", "0", "--lambda", "1/3"]);
    assert_eq!(v["simple_embedding_exists"], false);
    let (_, v) = json(&["classify", "--watts", "2,1/2,0,0,5/2", "--lambda", "0"]);
    assert_eq!(v["maximal_mu"], "3");
}

#[test]
fn classify_critical_examples() {
    let (_, v) = json(&["classify-critical", "--delta", "0", "--w", "0", "--lambda", "1/3"]);
    assert_eq!(v["status"], "irreducible");
    let (_, v) = json(&["classify-critical", "--delta", "0", "--w", "0", "--lambda", "0"]);
    assert_eq!(v["status"], "undetermined");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(voa(&["classify", "--level", "1/0", "--delta", "0", "--w", "0", "--lambda", "0"]).status.code(), Some(2));
    assert_eq!(voa(&["classify", "--level", "-3", "--delta", "0", "--w", "0", "--lambda", "0"]).status.code(), Some(2));
    assert_eq!(voa(&["ope", "G+", "X"]).status.code(), Some(2));
    assert_eq!(voa(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn ope_printing() {
    let out = String::from_utf8(voa(&["ope", "G+", "G-"]).stdout).unwrap();
    for pole in ["(z-w)^-3", "(z-w)^-2", "(z-w)^-1"] {
        assert!(out.contains(pole), "{out}");
    }
    let out = String::from_utf8(voa(&["ope", "G+", "G+"]).stdout).unwrap();
    assert!(out.contains("~ 0"));
    let (_, v) = json(&["ope", "--algebra", "zam", "W", "W"]);
    assert_eq!(v["products"][0]["pole_order"], 6);
}

#[test]
fn table_dump_round_trips() {
    for alg in ["bp", "zam", "bp-critical"] {
        let out = voa(&["table", "dump", "--algebra", alg]);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        let table = bpvoa_core::voa::OpeTable::parse(&text).unwrap();
        assert_eq!(table.render(), text);
    }
}

#[test]
fn character_output() {
    let (_, v) = json(&["character", "--order", "4"]);
    assert_eq!(v["q_offset"], "-1/12");
    assert_eq!(v["coeffs"], serde_json::json!(["1", "2", "5", "10", "20"]));
    assert_eq!(v["y_exp"], "-1");
    let (_, v) = json(&["character", "--level", "-9/4", "--lambda", "0", "--zam-coeffs", "1,0,0", "--order", "2"]);
    assert_eq!(v["z_exp"], "1/2");
    assert_eq!(v["delta"], true);
}

#[test]
fn injectivity_report() {
    let (code, v) = json(&["injectivity", "--cutoff", "2", "--levels", "-9/4,1/2,-5/3"]);
    assert_eq!(code, 0);
    let w2: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["weight"] == 2).collect();
    assert_eq!(w2.len(), 3);
    assert!(w2.iter().all(|c| c["rank"] == 7));
    assert_eq!(voa(&["injectivity", "--levels", "-3"]).status.code(), Some(2));
}
