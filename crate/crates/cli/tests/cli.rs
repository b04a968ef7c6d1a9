use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn pm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pm"))
        .args(args)
        .env_remove("PM_SEED")
        .output()
        .expect("pm runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("one JSON document on stdout")
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pm-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn iterate_ex54_from_zero_reaches_one() {
    let out = pm(&["fixedpoint", "iterate", "--space", "ex5.4", "--map", "ex5.4.T", "--from", "0/1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["outcome"]["outcome"], "fixed_point");
    assert_eq!(v["outcome"]["point"], "1/1");
    assert_eq!(v["iterates"][3], "7/8");
}

#[test]
fn catalog_verify_all_passes() {
    let out = pm(&["catalog", "verify", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() >= 30);
    let ids: Vec<&str> = v["facts"].as_array().unwrap().iter().map(|f| f["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn asymmetric_space_fails_p3() {
    let p = temp_file("bad.json", r#"{"points":["a","b"],"p":[["0/1","1/1"],["2/1","0/1"]]}"#);
    let out = pm(&["axioms", "--space", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["violated_axiom"], "P3");
    assert_eq!(v["witness"], serde_json::json!(["a", "b"]));
}

#[test]
fn malformed_json_is_a_structural_error() {
    let p = temp_file("broken.json", "{\"points\": [\"a\"], \"p\": [[\"0/1\"]\n");
    let out = pm(&["axioms", "--space", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn unknown_ids_and_bad_arguments_exit_2() {
    assert_eq!(pm(&["axioms", "--space", "ex9.9"]).status.code(), Some(2));
    assert_eq!(pm(&["catalog", "verify", "--space", "ex9.9"]).status.code(), Some(2));
    let bad_alpha = pm(&["fixedpoint", "check", "--space", "ex5.4", "--map", "ex5.4.T", "--cond", "max", "--alpha", "1/1"]);
    assert_eq!(bad_alpha.status.code(), Some(2));
    let bad_tol = pm(&["fixedpoint", "iterate", "--space", "ex5.4", "--map", "ex5.4.T", "--from", "0", "--tol", "0/1"]);
    assert_eq!(bad_tol.status.code(), Some(2));
    assert_eq!(pm(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn export_then_import_roundtrips() {
    let out = pm(&["catalog", "export", "--space", "ex5.4"]);
    let exported = json(&out);
    let p = temp_file("ex54.json", &serde_json::to_string(&exported).unwrap());
    let again = pm(&["axioms", "--space", p.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    let gen = pm(&["random", "generate", "--n", "4", "--seed", "9"]);
    let p2 = temp_file("rand.json", std::str::from_utf8(&gen.stdout).unwrap());
    let s: Value = json(&gen);
    let text = std::fs::read_to_string(&p2).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), s);
    assert_eq!(pm(&["axioms", "--space", p2.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn seed_env_overrides_default() {
    let a = pm(&["random", "generate", "--n", "5"]);
    let b = Command::new(env!("CARGO_BIN_EXE_pm"))
        .args(["random", "generate", "--n", "5"])
        .env("PM_SEED", "17")
        .output()
        .unwrap();
    let c = pm(&["random", "generate", "--n", "5", "--seed", "17"]);
    assert_ne!(json(&a), json(&b));
    assert_eq!(json(&b), json(&c));
}

#[test]
fn condition_checks_report_verdicts() {
    let ok = pm(&["fixedpoint", "check", "--space", "ex3.4", "--map", "ex3.4.T", "--cond", "contraction", "--alpha", "2/3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["pairs_checked"], 45);
    let bad = pm(&["fixedpoint", "check", "--space", "ex5.8", "--map", "id", "--cond", "max", "--alpha", "1/2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["verdict"], "violated");
    let map = temp_file("swap.json", r#"{"a":"b","b":"a"}"#);
    let swap = pm(&["fixedpoint", "check", "--space", "ex5.8", "--map", map.to_str().unwrap(), "--cond", "min", "--k", "2"]);
    assert_eq!(swap.status.code(), Some(1));
}

#[test]
fn enumerate_and_bottom() {
    let out = pm(&["fixedpoint", "enumerate", "--space", "ex5.8", "--cond", "max", "--alpha", "0/1"]);
    assert_eq!(json(&out)["maps"], serde_json::json!(["a->a,b->a"]));
    let b = pm(&["fixedpoint", "bottom", "--space", "ex5.5"]);
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(json(&b)["points"], serde_json::json!(["1/2", "1/3", "1/1"]));
    let s = pm(&["fixedpoint", "bottom", "--space", "ex3.4", "--map", "ex3.4.T", "--alpha", "2/3"]);
    assert_eq!(json(&s)["outcome"]["point"], "-5/1");
}

#[test]
fn sequence_analysis() {
    let c = pm(&[
        "analyze", "seq", "--space", "ex4.8", "--generator", "ex4.8.n", "--target", "0", "--tol", "1/25", "--horizon", "50",
    ]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(json(&c)["tail_start"], 25);
    let r = pm(&[
        "analyze", "seq", "--space", "ex5.5", "--generator", "ex5.5.inv", "--target", "0", "--mode", "proper",
    ]);
    assert_eq!(r.status.code(), Some(1));
    assert_eq!(json(&r)["mode"], "refuted");
    let l = pm(&[
        "analyze", "seq", "--space", "ex5.6", "--seq", r#"{"explicit":["1/2","1/3"]}"#, "--mode", "limit-set",
    ]);
    assert!(json(&l).as_array().unwrap().contains(&Value::from("0/1")));
}

#[test]
fn topology_commands() {
    let sep = json(&pm(&["topology", "separation", "--space", "ex5.6"]));
    assert_eq!(sep["hausdorff"], false);
    let net = json(&pm(&["topology", "net", "--space", "apex", "--eps", "1/2", "--restrict", "x0,x1,x2,x3"]));
    assert_eq!(net["centers"].as_array().unwrap().len(), 4);
    let cover = pm(&["topology", "cover", "--space", "apex", "--centers", "x0,x1", "--eps", "1/2"]);
    assert_eq!(cover.status.code(), Some(1));
    let max = json(&pm(&["topology", "maximal", "--space", "ex5.6"]));
    assert_eq!(max["points"], serde_json::json!(["0/1"]));
    let g = json(&pm(&["topology", "gdelta", "--space", "ex5.8"]));
    assert_eq!(g["equals_diagonal"], true);
    assert!(pm(&["topology", "order", "--space", "ex3.2"]).status.success());
}

#[test]
fn text_format_writes_summary_to_stdout() {
    let out = pm(&["--format", "text", "catalog", "list"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("ex5.4") && s.contains("ex3.4.T"));
}
