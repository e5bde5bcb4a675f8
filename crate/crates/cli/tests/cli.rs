use std::process::{Command, Output};

use clap::Parser;
use qos3_cli::{execute, Cli};
use serde_json::Value;

fn qos3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qos3"))
        .args(args)
        .env_remove("QOS3_SEED")
        .output()
        .unwrap()
}

fn json_of(args: &[&str]) -> (String, Value) {
    let mut full: Vec<&str> = vec!["qos3"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--output", "json"]);
    let out = execute(&Cli::try_parse_from(full).unwrap());
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    (out.stdout, v)
}

#[test]
fn s1_random_run() {
    let (_, v) = json_of(&[
        "simulate", "--scheme", "s1", "--u", "random", "--chi", "random", "--seed", "7",
    ]);
    assert_eq!(v["branch_count"], 243);
    assert_eq!(v["success_probability"], "1");
    assert_eq!(v["verified_probability"], "1");
    assert_eq!(v["resources"]["efficiency"], "1/10");
    assert_eq!(v["invariants"], "ok");
    assert_eq!(v["branches"][0]["probability"], "1/243");
}

#[test]
fn s2_random_run() {
    let (_, v) = json_of(&[
        "simulate", "--scheme", "s2", "--u", "random", "--basis", "c1", "--chi", "random",
        "--seed", "7",
    ]);
    assert_eq!(v["branch_count"], 81);
    assert_eq!(v["success_probability"], "1/3");
    assert_eq!(v["resources"]["efficiency"], "1/24");
}

#[test]
fn s2_declared_family_run() {
    let (_, v) = json_of(&[
        "simulate",
        "--scheme",
        "s2",
        "--u",
        "family:U1:0.3,1.1,2.0",
        "--basis",
        "c1",
        "--declared",
        "u12",
    ]);
    assert_eq!(v["success_probability"], "1");
    assert_eq!(v["declared"], "U12");
    assert_eq!(v["declared_contains_u"], true);
    assert_eq!(v["resources"]["efficiency"], "1/8");
}

#[test]
fn s2_parameterized_basis() {
    let r = 1.0 / 2f64.sqrt();
    let basis = format!("{r},-{r},0.4,1.3");
    let (_, v) = json_of(&[
        "simulate", "--scheme", "s2", "--basis", &basis, "--seed", "1",
    ]);
    assert_eq!(v["success_probability"], "1/3");
    assert_eq!(v["basis"]["tau1"], "0.400000000000");
}

#[test]
fn json_round_trips_byte_identically() {
    for args in [
        vec![
            "simulate", "--scheme", "s2", "--basis", "c4b", "--seed", "5",
        ],
        vec!["classify", "--u", "random", "--seed", "5"],
        vec!["table1", "--seed", "5"],
        vec!["bases"],
    ] {
        let (text, v) = json_of(&args);
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(text, again, "{args:?}");
    }
}

#[test]
fn classify_identity_and_random() {
    let (_, v) = json_of(&["classify", "--u", "identity"]);
    let fams: Vec<&str> = v["memberships"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    for f in ["U1", "U3", "U6", "U9", "U12", "U15", "U18"] {
        assert!(fams.contains(&f), "{f}");
    }
    assert!(v["predicted"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["probability"] == "1"));

    let (_, v) = json_of(&["classify", "--u", "random", "--seed", "2"]);
    assert!(v["memberships"].as_array().unwrap().is_empty());
    assert!(v["predicted"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["probability"] == "1/3"));
}

#[test]
fn classify_swap_matrix() {
    let (_, v) = json_of(&["classify", "--u", "matrix:1,0,0,0,0,1,0,1,0"]);
    let fams: Vec<&str> = v["memberships"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(fams.contains(&"U2") && fams.contains(&"U4"));
}

#[test]
fn classify_rejects_non_unitary() {
    let out = qos3(&["classify", "--u", "matrix:1,1,0,0,1,0,0,0,1"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not unitary"), "{err}");
    assert!(err.contains("1.000e0"), "{err}");
}

#[test]
fn bad_configs_fail() {
    assert!(!qos3(&["simulate", "--scheme", "s1", "--basis", "c1"])
        .status
        .success());
    assert!(!qos3(&["simulate", "--scheme", "s2", "--chi", "0,0,0"])
        .status
        .success());
    assert!(!qos3(&["simulate", "--scheme", "s2", "--declared", "U42"])
        .status
        .success());
    assert!(!qos3(&["simulate", "--scheme", "s2", "--u", "1,2,3"])
        .status
        .success());
}

#[test]
fn table1_exits_zero() {
    let out = qos3(&["table1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("PASS").count(), 9);
}

#[test]
fn seed_from_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_qos3"))
        .args(["simulate", "--scheme", "s2", "--output", "json"])
        .env("QOS3_SEED", "41")
        .output()
        .unwrap();
    let with_flag = qos3(&[
        "simulate", "--scheme", "s2", "--output", "json", "--seed", "41",
    ]);
    assert_eq!(with_env.stdout, with_flag.stdout);
    let other = qos3(&[
        "simulate", "--scheme", "s2", "--output", "json", "--seed", "42",
    ]);
    assert_ne!(with_env.stdout, other.stdout);
}

#[test]
fn bases_lists_every_preset() {
    let (_, v) = json_of(&["bases"]);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 5);
    assert_eq!(cases[3]["case"], "c4a");
    assert_eq!(cases[3]["w"][0]["unitary"], true);
    assert_eq!(cases[0]["w"][0]["unitary"], false);
}

#[test]
fn shots_are_seeded_and_follow_branches() {
    let args = ["simulate", "--scheme", "s1", "--seed", "9", "--shots", "20"];
    let (a, v) = json_of(&args);
    let (b, _) = json_of(&args);
    assert_eq!(a, b);
    let shots = v["shots"].as_array().unwrap();
    assert_eq!(shots.len(), 20);
    assert!(shots.iter().all(|s| s["protocol_success"] == true));

    let (_, v) = json_of(&["simulate", "--scheme", "s1", "--seed", "9"]);
    assert!(v.get("shots").is_none());
}
