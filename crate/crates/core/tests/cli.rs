use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = Command::new(env!("CARGO_BIN_EXE_hyperideal"))
        .args(args)
        .env_remove("HYPERIDEAL_SEED")
        .output()
        .unwrap();
    let text = String::from_utf8(stdout).unwrap();
    let json = if text.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&text).unwrap()
    };
    (
        status.code().unwrap(),
        json,
        String::from_utf8(stderr).unwrap(),
    )
}

#[test]
fn check_prime_ideal_holds() {
    let mult2 = data("mult2.lh");
    let (code, json, _) = run(&[
        "check",
        mult2.to_str().unwrap(),
        "--subset",
        "0",
        "--property",
        "prime-ideal",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json["holds"], true);
    assert_eq!(json["property"], "prime-ideal");
    assert_eq!(json["structure_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn check_failure_exits_one_with_witness() {
    let z6 = data("z6.lh");
    let (code, json, _) = run(&[
        "check",
        z6.to_str().unwrap(),
        "--subset",
        "0",
        "--property",
        "prime-ideal",
    ]);
    assert_eq!(code, 1);
    assert_eq!(json["holds"], false);
    assert_eq!(json["witness"]["elements"], serde_json::json!([2, 3]));
}

#[test]
fn empty_subset_is_rejected() {
    let mult2 = data("mult2.lh");
    let (code, _, err) = run(&[
        "check",
        mult2.to_str().unwrap(),
        "--subset",
        "",
        "--property",
        "ideal",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("nonempty"));
}

#[test]
fn check_fuzzy() {
    let mult2 = data("mult2.lh");
    let f = mult2.to_str().unwrap();
    let (code, json, _) = run(&[
        "check-fuzzy",
        f,
        "--fuzzy",
        "fA",
        "--property",
        "fuzzy-prime-ideal",
    ]);
    assert_eq!((code, &json["holds"]), (0, &Value::Bool(true)));
    let (code, json, _) = run(&[
        "check-fuzzy",
        f,
        "--fuzzy",
        "g",
        "--property",
        "fuzzy-ideal",
    ]);
    assert_eq!(code, 1);
    assert_eq!(json["witness"]["elements"], serde_json::json!([0, 1, 0]));
    let (code, _, _) = run(&[
        "check-fuzzy",
        f,
        "--fuzzy",
        "nope",
        "--property",
        "fuzzy-ideal",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn char_and_enumerate() {
    let mult2 = data("mult2.lh");
    let f = mult2.to_str().unwrap();
    let (code, json, _) = run(&["char", f, "--subset", "0"]);
    assert_eq!(code, 0);
    assert_eq!(json["grades"], serde_json::json!(["1", "0"]));
    let (code, json, _) = run(&["enumerate", f, "--filter", "ideal"]);
    assert_eq!(code, 0);
    assert_eq!(json["subsets"], serde_json::json!([[0], [0, 1]]));
}

#[test]
fn validate_reports_relation_diagnostics() {
    let (code, json, _) = run(&["validate", data("proj2.lh").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json["holds"], true);
    assert_eq!(json["relation"]["reflexive"], true);
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.lh");
    std::fs::write(&path, "lehyper v1\nn 2\ncell 0 0 : 0\ncell 0 1 :\n").unwrap();
    let (code, json, err) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(json, Value::Null);
    assert!(err.contains("line 4"), "{err}");
    let (code, _, _) = run(&["validate", dir.path().join("missing.lh").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn verify_exhaustive_order_two() {
    let (code, json, _) = run(&["verify", "--theorem", "P7", "--order", "2", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(json["structures_checked"], 1296);
    assert_eq!(json["theorem_id"], "P7");
    assert_eq!(json["failures"], serde_json::json!([]));
}

#[test]
fn verify_sampled_records_seed() {
    let (code, json, _) = run(&[
        "verify",
        "--theorem",
        "P10",
        "--order",
        "3",
        "--samples",
        "200",
        "--seed",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json["seed"], 5);
    assert_eq!(json["universe"]["mode"], "sampled");
}

#[test]
fn seed_env_is_a_fallback() {
    let out = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_hyperideal"));
        cmd.args([
            "verify",
            "--theorem",
            "P8",
            "--order",
            "3",
            "--samples",
            "10",
        ]);
        if let Some(s) = flag {
            cmd.args(["--seed", s]);
        }
        cmd.env_remove("HYPERIDEAL_SEED");
        if let Some(e) = env {
            cmd.env("HYPERIDEAL_SEED", e);
        }
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["seed"].as_u64().unwrap()
    };
    assert_eq!(out(None, None), 0);
    assert_eq!(out(Some("17"), None), 17);
    assert_eq!(out(Some("17"), Some("3")), 3);
}

#[test]
fn large_exhaustive_needs_flag() {
    let (code, _, err) = run(&["verify", "--theorem", "P8", "--order", "3", "--exhaustive"]);
    assert_eq!(code, 2);
    assert!(err.contains("enabled explicitly"), "{err}");
    let (code, _, err) = run(&[
        "verify",
        "--theorem",
        "P8",
        "--order",
        "3",
        "--exhaustive",
        "--allow-large",
        "--max-structures",
        "1000",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn search_z6_finds_witness() {
    let z6 = data("z6.lh");
    let (code, json, _) = run(&[
        "search",
        "--claim",
        "p14-literal",
        "--order",
        "6",
        "--file",
        z6.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    let w = &json["failures"][0];
    assert_eq!(w["subset"], serde_json::json!([0]));
    assert_eq!(
        w["verdicts"][2]["witness"]["elements"],
        serde_json::json!([2, 3])
    );
    let (code, _, _) = run(&[
        "search",
        "--claim",
        "p14-literal",
        "--order",
        "2",
        "--file",
        z6.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["verify", "--theorem", "P99"]).0, 2);
    assert_eq!(run(&["verify", "--theorem", "P7", "--bogus"]).0, 2);
    assert_eq!(
        run(&["check", "x.lh", "--subset", "0", "--property", "nonsense"]).0,
        2
    );
}

#[test]
fn pretty_output_is_same_document() {
    let mult2 = data("mult2.lh");
    let f = mult2.to_str().unwrap();
    let (_, compact, _) = run(&["check", f, "--subset", "0", "--property", "ideal"]);
    let (_, pretty, _) = run(&[
        "--pretty",
        "check",
        f,
        "--subset",
        "0",
        "--property",
        "ideal",
    ]);
    assert_eq!(compact, pretty);
}
