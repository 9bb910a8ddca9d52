use std::process::{Command, Output};

use serde_json::Value;

fn clusterq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterq")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn explore_a3_counts() {
    let out = clusterq(&["explore", "--type", "A", "--rank", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["variables"], 9);
    assert_eq!(v["clusters"], 14);
}

#[test]
fn compat_dagger_pair() {
    let out = clusterq(&["compat", "--type", "D", "--rank", "4", "L(0,1)+", "L(0,2)+"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"simple": true, "case": "c"}));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["compat", "--type", "D", "--rank", "4", "L(9,1)", "L(0,2)+"],
        &["qchar", "--type", "E", "--rank", "6", "L(0,1)"],
        &["mutate", "--type", "A", "--rank", "2", "0"],
        &["factorize", "--type", "A", "--rank", "2", "Y[1,1]^-1"],
    ] {
        assert_eq!(clusterq(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn mutate_round_trip_through_json() {
    let out = clusterq(&["mutate", "--type", "A", "--rank", "2", "1", "2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("clusterq-seed-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let back = clusterq(&["mutate", "--seed", path.to_str().unwrap(), "1", "2", "1"]);
    std::fs::remove_file(&path).ok();
    let start = clusterq(&["mutate", "--type", "A", "--rank", "2"]);
    assert_eq!(json(&back), json(&start));
}

#[test]
fn factorize_and_tensor() {
    let out = clusterq(&["factorize", "--type", "A", "--rank", "2", "--check-unique", "Y[1,1]*Y[2,2]*Y[2,4]"]);
    assert_eq!(json(&out)["factors"], serde_json::json!(["L(1,3)", "L(2,2)"]));
    let out = clusterq(&["tensor", "--type", "A", "--rank", "2", "Y[1,1]*Y[1,3]", "Y[2,2]*Y[2,4]"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["factors"].is_object());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["explore", "--type", "D", "--rank", "4"][..],
        &["fpoly", "--type", "A", "--rank", "3"],
        &["verify", "--type", "A", "--rank", "2", "--jobs", "1"],
    ] {
        let a = clusterq(args);
        let b = clusterq(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let one = clusterq(&["verify", "--type", "A", "--rank", "3", "--jobs", "1"]);
    let four = clusterq(&["verify", "--type", "A", "--rank", "3", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), Some(0));
}

#[test]
fn verify_d4_reports_every_character_row() {
    let out = clusterq(&["verify", "--type", "D", "--rank", "4"]);
    let v = json(&out);
    let rows: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("D4 character"))
        .collect();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|c| c["status"] == "pass"));
    assert_eq!(out.status.code(), Some(if v["summary"]["fail"] == 0 { 0 } else { 1 }));
}

#[test]
fn table_format() {
    let out = clusterq(&["--format", "table", "qchar", "--type", "A", "--rank", "2", "L(0,1)"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("label:   L(0,1)"), "{text}");
}
