use std::process::Command;

use serde_json::{json, Value};

fn mvprob(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mvprob"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let (code, out) = mvprob(args);
    (
        code,
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}")),
    )
}

#[test]
fn eval_example() {
    assert_eq!(
        json_of(&["eval", "--algebra", "chain:4", "--term", "x \\/ ~x", "--env", "x=1/4"]),
        (0, json!("3/4"))
    );
    let (code, v) = json_of(&["eval", "--algebra", "unit", "--term", "1 - x", "--env", "x=1/4"]);
    assert_eq!((code, v), (0, json!("3/4")));
    let (_, v) = json_of(&["eval", "--algebra", "chang", "--term", "x + x", "--env", r#"x={"fin":2}"#]);
    assert_eq!(v, json!({"fin": 4}));
}

#[test]
fn empty_enumeration() {
    assert_eq!(
        json_of(&["enumerate-maps", "--from", "chain:2", "--to", "chain:1"]),
        (0, json!({"count": 0, "maps": []}))
    );
    let (_, v) = json_of(&["enumerate-maps", "--from", "chain:2", "--to", "chain:4"]);
    assert_eq!(v, json!({"count": 1, "maps": [["0", "1/2", "1"]]}));
}

#[test]
fn extreme_identity_matrix() {
    let (code, v) = json_of(&["extreme", "--matrix", r#"[["1","0"],["0","1"]]"#]);
    assert_eq!((code, v), (0, json!({"extreme": true, "hom": true, "vertex": true})));
    let (_, v) = json_of(&["extreme", "--matrix", r#"[["1/2","1/2"],["1/2","1/2"]]"#]);
    assert_eq!(v["extreme"], json!(false));
    assert!(v["witness"].is_array());
}

#[test]
fn failed_checks_carry_witnesses() {
    let map = r#"{"domain": "chain:2", "codomain": "chain:2", "table": ["0", "0", "1"]}"#;
    let (code, v) = json_of(&["check-map", "--map", map]);
    assert_eq!(code, 1);
    assert_eq!(v["probability_map"], json!(false));
    assert_eq!(v["axioms"]["p2"], json!({"holds": false, "witness": ["1/2"]}));
}

#[test]
fn budget_exit_is_valid_json() {
    let (code, v) = json_of(&[
        "enumerate-maps",
        "--from",
        "prod:chain:1:3",
        "--to",
        "chain:6",
        "--budget",
        "5",
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["budget"], json!(5));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["eval", "--algebra", "chain:4", "--term", "x + (y", "--env", "x=0"],
        vec!["eval", "--algebra", "chain:4", "--term", "x", "--env", "x=1/3"],
        vec!["eval", "--algebra", "chain:4", "--term", "x"],
        vec!["extreme", "--matrix", r#"[["1","1"],["0","1"]]"#],
        vec!["maxspec", "--algebra", "free1"],
        vec!["frobnicate"],
    ] {
        assert_eq!(mvprob(&args).0, 2, "{args:?}");
    }
}

#[test]
fn same_seed_same_bytes() {
    let args = [
        "--seed",
        "7",
        "check-map",
        "--map",
        r#"{"rule": "example_pm"}"#,
        "--samples",
        "50",
    ];
    assert_eq!(mvprob(&args), mvprob(&args));
    let ids = ["--seed", "11", "identities", "--algebra", "free1", "--samples", "100"];
    let (code, first) = mvprob(&ids);
    assert_eq!(code, 0);
    assert_eq!(first, mvprob(&ids).1);
}

#[test]
fn spectra_commands() {
    let (_, v) = json_of(&["radical", "--algebra", "chang"]);
    assert_eq!(v["radical"], json!("radical"));
    assert_eq!(v["semisimple"], json!(false));
    let (_, v) = json_of(&["radical", "--algebra", "prod:chain:2:2"]);
    assert_eq!(
        (v["semisimple"].clone(), v["star_collision"].clone()),
        (json!(true), Value::Null)
    );
    let (_, v) = json_of(&["quotient", "--algebra", "chang", "--ideal", "radical"]);
    assert_eq!(v["quotient"]["carrier"], json!(["[0]", "[1]"]));
    let (_, v) = json_of(&["maxspec", "--algebra", "chain:3"]);
    assert_eq!(v["count"], json!(1));
    let (code, v) = json_of(&[
        "decompose-state",
        "--algebra",
        "prod:chain:1:2",
        "--state",
        r#"["0","1/4","3/4","1"]"#,
    ]);
    assert_eq!(code, 0);
    let w: Vec<&Value> = v["weights"].as_array().unwrap().iter().map(|x| &x["weight"]).collect();
    assert_eq!(w, [&json!("3/4"), &json!("1/4")]);
}

#[test]
fn matrices_and_duals() {
    let (_, m) = json_of(&["to-matrix", "--map", r#"{"stochastic": [["1/3","2/3"],["0","1"]]}"#]);
    assert_eq!(m, json!({"n": 2, "rows": [["1/3", "2/3"], ["0", "1"]]}));
    let (_, v) = json_of(&["from-matrix", "--matrix", &m.to_string(), "--apply", r#"["1","0"]"#]);
    assert_eq!(v["value"], json!(["1/3", "0"]));
    let (code, v) = json_of(&["dual", "--map", r#"{"stochastic": [["1/3","2/3"],["0","1"]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["roundtrip"], json!(true));
    assert_eq!(v["theorem"]["agree"], json!(true));
    assert_eq!(v["dual"]["states"][0]["weights"], json!(["1/3", "2/3"]));
}

#[test]
fn gamma_and_identities() {
    let (code, v) = json_of(&["gamma-roundtrip", "--algebra", "prod:chain:1:2"]);
    assert_eq!(
        (code, v["isomorphic"].clone(), v["interval_size"].clone()),
        (0, json!(true), json!(4))
    );
    let (code, v) = json_of(&["identities", "--algebra", "chain:5"]);
    assert_eq!((code, v["holds"].clone()), (0, json!(true)));
}

#[test]
fn csv_format() {
    let (code, out) = mvprob(&["--format=csv", "enumerate-maps", "--from", "chain:2", "--to", "chain:4"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0,1/2,1\n0,1/2,1\n");
    let (_, out) = mvprob(&["--format", "csv", "extreme", "--matrix", r#"[["0","1"],["1","0"]]"#]);
    assert_eq!(out, "extreme,hom,vertex\ntrue,true,true\n");
}

#[test]
fn algebra_files() {
    let dir = std::env::temp_dir().join(format!("mvprob-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("three.json");
    let table =
        json!({"kind": "table", "carrier": ["0", "h", "1"], "oplus": [[0, 1, 2], [1, 2, 2], [2, 2, 2]], "neg": [2, 1, 0]});
    std::fs::write(&path, table.to_string()).unwrap();
    let spec = format!("@{}", path.display());
    let (code, v) = json_of(&["eval", "--algebra", &spec, "--term", "x + x", "--env", "x=h"]);
    assert_eq!((code, v), (0, json!("1")));
    let (code, v) = json_of(&["gamma-roundtrip", "--algebra", &spec]);
    assert_eq!((code, v["isomorphic"].clone()), (0, json!(true)));
    std::fs::remove_dir_all(&dir).unwrap();
}
