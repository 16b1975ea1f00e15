use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use homotopy3::catalog;
use homotopy3::json::{X2Json, XmodJson, XsqJson};
use homotopy3::x2mod::mapping_cone;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homotopy3"))
        .args(args)
        .env_remove("HOMOTOPY3_MAX_ORDER")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, v: &impl serde::Serialize) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

fn pi_orders(v: &Value) -> Vec<u64> {
    v["homotopy"].as_array().unwrap().iter().map(|h| h["order"].as_u64().unwrap()).collect()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "d4-square"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(run(&["pipeline", "d4-square", "--via", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["x2", "verify", "nabla/c2-square", "--depth", "2"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_homotopy3"))
        .args(["bisimp", "nabla", "d4-square"])
        .env("HOMOTOPY3_MAX_ORDER", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let (code, v) = json(&["bisimp", "nabla", "d4-square", "--max-order", "10"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["exit_code"], 3);
}

#[test]
fn mutated_files_fail_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let mut sq = XsqJson::of(&catalog::square("d4-square").unwrap());
    let good = write(dir.path(), "good.json", &sq);
    assert_eq!(json(&["verify", &good]).0, 0);
    sq.h[1][2] ^= 1;
    let bad = write(dir.path(), "bad.json", &sq);
    let (code, v) = json(&["verify", &bad]);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
    let failed = v["axioms"].as_array().unwrap().iter().find(|a| a["passed"] == false).unwrap();
    assert!(failed["violation"]["axiom"].is_string());
    assert!(!failed["violation"]["witnesses"].as_array().unwrap().is_empty());

    let mut cm = XmodJson::of(&catalog::crossed_module("a3-s3").unwrap());
    cm.action[1][1] = 0;
    assert_eq!(json(&["verify", &write(dir.path(), "cm.json", &cm)]).0, 1);

    let cone = mapping_cone(&catalog::square("s3-square").unwrap()).unwrap();
    let mut t = X2Json::of(&cone);
    let ok = write(dir.path(), "x2.json", &t);
    assert_eq!(json(&["x2", "verify", &ok]).0, 0);
    t.peiffer[1][1] = (t.peiffer[1][1] + 1) % cone.l.order() as u32;
    assert_eq!(json(&["x2", "verify", &write(dir.path(), "x2bad.json", &t)]).0, 1);
}

#[test]
fn cone_output_verifies_as_file() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(&["x2", "cone", "d4-square"]);
    assert_eq!(code, 0);
    let f = write(dir.path(), "cone.json", &v["data"]);
    let (code, w) = json(&["x2", "pi", &f]);
    assert_eq!(code, 0);
    assert_eq!(pi_orders(&w), pi_orders(&v));
}

#[test]
fn pipeline_routes_agree() {
    for sq in ["c2-corner-square", "d4-square", "trivial-square"] {
        let orders: Vec<Vec<u64>> = ["cone", "nabla", "diag"]
            .iter()
            .map(|via| {
                let (code, v) = json(&["pipeline", sq, "--via", via]);
                assert_eq!(code, 0, "{sq} via {via}");
                pi_orders(&v)
            })
            .collect();
        assert!(orders.windows(2).all(|w| w[0] == w[1]), "{sq}: {orders:?}");
    }
    let (_, v) = json(&["pipeline", "c2-corner-square", "--via", "nabla"]);
    assert_eq!(pi_orders(&v), vec![1, 1, 2]);
    assert_eq!(v["homotopy"][2]["abelian_invariants"], serde_json::json!([2]));
}

fn strip_timing(out: &[u8]) -> Value {
    let mut v: Value = serde_json::from_slice(out).unwrap();
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["catalog", "--json"][..],
        &["bisimp", "binerve", "c2-corner-square", "--json"],
        &["x2", "cone", "s3-square", "--json"],
        &["simp", "export", "nerve/a3-s3", "--json"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        let (a, b) = (strip_timing(&a.stdout), strip_timing(&b.stdout));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

fn scalars(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.iter().filter(|(k, _)| *k != "timing_ms").for_each(|(_, x)| scalars(x, out)),
        Value::Array(a) => a.iter().for_each(|x| scalars(x, out)),
        Value::String(s) => out.push(s.clone()),
        Value::Number(n) => out.push(n.to_string()),
        Value::Bool(b) => out.push(b.to_string()),
        Value::Null => {}
    }
}

#[test]
fn text_and_json_carry_the_same_data() {
    for args in [
        &["verify", "d4-square"][..],
        &["pipeline", "c2-corner-square", "--via", "nabla"],
        &["simp", "pi", "nerve/a3-s3", "-n", "1"],
        &["verify", "no-such-thing"],
    ] {
        let text = String::from_utf8(run(args).stdout).unwrap();
        let (_, v) = json(args);
        let mut leaves = Vec::new();
        scalars(&v, &mut leaves);
        for leaf in leaves.iter().filter(|l| *l != "--json") {
            assert!(text.contains(leaf.as_str()), "{args:?}: {leaf:?} missing from text");
        }
    }
}
