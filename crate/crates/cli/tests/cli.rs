use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn icl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icl"))
        .args(args)
        .env_remove("ICL_MAX_ELEMENTS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn temp_spec(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn lattice_of_i2_has_ten_nodes() {
    let i2 = spec("i2.json");
    let v = json(&icl(&["lattice", i2.to_str().unwrap(), "--format", "json"]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 10);
    assert_eq!(v["size"], 7);
    assert!(v["bottom"].is_u64() && v["top"].is_u64());
}

#[test]
fn dot_output_is_deterministic() {
    let i2 = spec("i2.json");
    let a = icl(&["lattice", i2.to_str().unwrap(), "--format", "dot"]);
    let b = icl(&["lattice", i2.to_str().unwrap(), "--format", "dot"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("digraph lattice {"));
    assert_eq!(text.matches("[label=\"τ:").count(), 10);
    assert!(text.contains(" | T:{"));
}

#[test]
fn pairs_and_oracle_on_i2() {
    let i2 = spec("i2.json");
    let v = json(&icl(&["pairs", i2.to_str().unwrap()]));
    assert_eq!(v["count"], 10);
    assert_eq!(v["candidates"], 21);
    for strategy in ["partitions", "principal-joins"] {
        let v = json(&icl(&["oracle", i2.to_str().unwrap(), "--strategy", strategy]));
        assert_eq!(v["count"], 10);
        assert_eq!(v["failures"], 0);
        assert_eq!(v["strategy"], strategy);
    }
}

#[test]
fn oracle_on_other_specs() {
    for (name, count) in [("beta.json", 5), ("chain3.json", 4), ("clifford6.json", 5)] {
        let v = json(&icl(&["oracle", spec(name).to_str().unwrap()]));
        assert_eq!(v["count"], count, "{name}");
        assert_eq!(v["failures"], 0, "{name}");
    }
}

#[test]
fn bicyclic_check_example() {
    let v = json(&icl(&[
        "bicyclic",
        "check",
        "--trace",
        "prefix=[2];tail=inf",
        "--sub",
        "k=2,d=5",
    ]));
    assert_eq!(v["verdict"], "valid");
    assert_eq!(v["normalizer"], "k=2,d=1");
    let v = json(&icl(&[
        "bicyclic",
        "check",
        "--trace",
        "prefix=[3];tail=per([2])",
        "--sub",
        "k=2,d=2",
    ]));
    assert_eq!(v["verdict"], "invalid");
    assert_eq!(v["l"], 1);
}

#[test]
fn check_pair_reports_relation_or_witness() {
    let i2 = spec("i2.json");
    let p = i2.to_str().unwrap();
    let v = json(&icl(&["check-pair", p, "--tau", "iota", "--sub", "S"]));
    assert_eq!(v["valid"], true);
    assert!(v["relation"].is_array());
    // Idempotents are 1, 4, 5, 7 (identity, {2}, {1}, empty).
    let v = json(&icl(&["check-pair", p, "--tau", "omega", "--sub", "E"]));
    assert_eq!(v["valid"], false);
    assert!(v["violation"].is_object());
    assert!(v["relation"].is_null());
}

#[test]
fn join_and_meet_cross_check_over_lattice() {
    let i2 = spec("i2.json");
    let p = i2.to_str().unwrap();
    let lattice = json(&icl(&["lattice", p]));
    let pair_text = |node: &Value| {
        let tau: Vec<String> = node["tau"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| {
                b.as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let sub: Vec<String> = node["sub"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
        format!("{};{}", tau.join("|"), sub.join(","))
    };
    let nodes = lattice["nodes"].as_array().unwrap();
    for a in nodes.iter().step_by(3) {
        for b in nodes.iter().step_by(2) {
            for op in ["join", "meet"] {
                let out = icl(&[op, p, "--p1", &pair_text(a), "--p2", &pair_text(b), "--cross-check"]);
                let v = json(&out);
                assert_eq!(v["cross_check"], true);
            }
        }
    }
}

#[test]
fn decompose_a_lattice_node() {
    let i2 = spec("i2.json");
    let p = i2.to_str().unwrap();
    let lattice = json(&icl(&["lattice", p]));
    for node in lattice["nodes"].as_array().unwrap() {
        let rho: Vec<String> = node["rho"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| {
                b.as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let v = json(&icl(&["decompose", p, "--rho", &rho.join("|")]));
        assert_eq!(v["rho"], node["rho"]);
        assert_eq!(v["trace"], node["tau"]);
        assert_eq!(v["inverse_kernel"], node["sub"]);
    }
}

#[test]
fn exit_codes() {
    let bad = temp_spec(r#"{"degree":2,"generators":[{"1":2,"2":2}]}"#);
    assert_eq!(icl(&["pairs", bad.path().to_str().unwrap()]).status.code(), Some(1));
    let garbled = temp_spec("not json");
    assert_eq!(
        icl(&["lattice", garbled.path().to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(icl(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(
        icl(&["bicyclic", "check", "--trace", "prefix=[0];tail=inf", "--sub", "E"])
            .status
            .code(),
        Some(1)
    );

    let big = temp_spec(r#"{"degree":4,"generators":[{"1":2,"2":3,"3":4,"4":1},{"1":2,"2":1}]}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_icl"))
        .args(["pairs", big.path().to_str().unwrap()])
        .env("ICL_MAX_ELEMENTS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let i2 = spec("i2.json");
    let not_left = icl(&["decompose", i2.to_str().unwrap(), "--rho", "1,2"]);
    assert_eq!(not_left.status.code(), Some(1));
}

#[test]
fn custom_spec_from_tempfile() {
    let f = temp_spec(r#"{"degree":3,"generators":[{"1":2}]}"#);
    let v = json(&icl(&["oracle", f.path().to_str().unwrap()]));
    assert_eq!(v["size"], 5);
    assert_eq!(v["failures"], 0);
}
