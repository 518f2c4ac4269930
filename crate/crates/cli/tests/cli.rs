//! Binary-level tests: exit codes, output determinism, round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pfs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfs"))
        .args(args)
        .env_remove("PFS_SEED")
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pfs_cli_test_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn compute_principal_block_to_stdout() {
    let out = pfs(&["compute", "--group", "A4", "--p", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "pfs.v1");
    assert_eq!(v["objects"].as_array().unwrap().len(), 7);
}

#[test]
fn compute_is_byte_deterministic() {
    let a = pfs(&["compute", "--group", "A4", "--p", "2", "--seed", "5"]);
    let b = pfs(&["compute", "--group", "A4", "--p", "2", "--seed", "5"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pfs_seed_env_is_default() {
    let with_flag = pfs(&["compute", "--group", "V4", "--p", "2", "--seed", "7"]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_pfs"))
        .args(["compute", "--group", "V4", "--p", "2"])
        .env("PFS_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(with_flag.stdout, with_env.stdout);
}

#[test]
fn split_failure_exits_3_with_error_json() {
    // GF(2) does not split the A4 block data
    let out = pfs(&["compute", "--group", "A4", "--p", "2", "--field-degree", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    let line = stderr.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(line).unwrap();
    assert_eq!(v["error"]["kind"], "split_field");
}

#[test]
fn usage_errors_exit_64() {
    let out = pfs(&["compute", "--group", "A4"]);
    assert_eq!(out.status.code(), Some(64));
    let out = pfs(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn bad_input_exits_1() {
    let out = pfs(&["compute", "--group", "NOSUCH", "--p", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = pfs(&["compute", "--group", "A4", "--p", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).lines().last().unwrap())
            .unwrap();
    assert_eq!(v["error"]["kind"], "not_prime");
}

#[test]
fn block_all_writes_one_file_per_block() {
    let out_path = tmp("a5.json");
    let out = pfs(&[
        "compute", "--group", "A5", "--p", "2", "--field-degree", "2", "--block", "all",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let b0 = out_path.with_file_name("a5_b0.json");
    let b1 = out_path.with_file_name("a5_b1.json");
    assert!(b0.exists() && b1.exists());
    let v0: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&b0).unwrap()).unwrap();
    assert_eq!(v0["meta"]["block_index"], 0);
}

#[test]
fn compare_seeds_f_identical_and_stable_parts_multiposet() {
    let s1 = tmp("a4_s1.json");
    let s2 = tmp("a4_s2.json");
    assert!(pfs(&["compute", "--group", "A4", "--p", "2", "--seed", "1", "--out", s1.to_str().unwrap()]).status.success());
    assert!(pfs(&["compute", "--group", "A4", "--p", "2", "--seed", "2", "--out", s2.to_str().unwrap()]).status.success());
    let cmp = pfs(&["compare", s1.to_str().unwrap(), s2.to_str().unwrap(), "--mode", "f-identical"]);
    assert!(cmp.status.success());
    let v: serde_json::Value = serde_json::from_slice(&cmp.stdout).unwrap();
    assert_eq!(v["isomorphic"], true);

    // A4 stable part vs A5 stable part: multiposet-isomorphic
    let sa4 = tmp("a4_stable.json");
    let sa5 = tmp("a5_stable.json");
    assert!(pfs(&["compute", "--group", "A4", "--p", "2", "--stable", "--out", sa4.to_str().unwrap()]).status.success());
    assert!(pfs(&["compute", "--group", "A5", "--p", "2", "--field-degree", "2", "--stable", "--out", sa5.to_str().unwrap()]).status.success());
    let cmp = pfs(&["compare", sa4.to_str().unwrap(), sa5.to_str().unwrap(), "--mode", "multiposet"]);
    assert!(cmp.status.success());

    // V4 full vs A5 full: not isomorphic, exit 1
    let v4 = tmp("v4.json");
    let a5 = tmp("a5_full.json");
    assert!(pfs(&["compute", "--group", "V4", "--p", "2", "--out", v4.to_str().unwrap()]).status.success());
    assert!(pfs(&["compute", "--group", "A5", "--p", "2", "--field-degree", "2", "--out", a5.to_str().unwrap()]).status.success());
    let cmp = pfs(&["compare", v4.to_str().unwrap(), a5.to_str().unwrap(), "--mode", "multiposet"]);
    assert_eq!(cmp.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&cmp.stdout).unwrap();
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn compare_rejects_schema_mismatch() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"schema\": \"pfs.v0\"}").unwrap();
    let good = tmp("good.json");
    assert!(pfs(&["compute", "--group", "V4", "--p", "2", "--out", good.to_str().unwrap()]).status.success());
    let cmp = pfs(&["compare", bad.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!(cmp.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&cmp.stderr).lines().last().unwrap())
            .unwrap();
    assert_eq!(v["error"]["kind"], "bad_input");
}

#[test]
fn group_file_input_works() {
    let gf = tmp("group.json");
    std::fs::write(&gf, r#"{"permutations": [[[0,1],[2,3]], [[0,2],[1,3]]]}"#).unwrap();
    let out = pfs(&["compute", "--group-file", gf.to_str().unwrap(), "--p", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["objects"].as_array().unwrap().len(), 5);
}

#[test]
fn cross_check_flag_passes_on_a4() {
    let out = pfs(&["compute", "--group", "A4", "--p", "2", "--cross-check"]);
    assert!(out.status.success());
}

#[test]
fn dot_output_has_multiplicity_labels() {
    let dot = tmp("a5.dot");
    let out = pfs(&[
        "compute", "--group", "A5", "--p", "2", "--field-degree", "2",
        "--out", tmp("a5_for_dot.json").to_str().unwrap(),
        "--dot", dot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.contains("label=\"\u{00d7}2\""));
    assert_eq!(text.matches("penwidth=2.0").count(), 2);
}
