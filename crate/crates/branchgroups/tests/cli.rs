//! End-to-end tests of the command line binary: output shape, exit
//! codes, and determinism of JSON reports.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_branchgroups"))
}

#[test]
fn group_info_reports_parameters() {
    let out = bin()
        .args(["group", "info", "--p", "3", "--alpha", "1,2", "--family", "ggs"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("periodic: true"));
    assert!(text.contains("symmetric: false"));
    let out = bin()
        .args(["group", "info", "--p", "3", "--alpha", "1,1", "--family", "ggs"])
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("periodic: false"));
    let out = bin()
        .args(["group", "info", "--p", "5", "--alpha", "1,2,2,1", "--family", "egs"])
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("symmetric: true"));
}

#[test]
fn preset_selects_gupta_sidki() {
    let out = bin()
        .args(["group", "info", "--preset", "gupta-sidki", "--family", "ggs"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p: 3"));
    assert!(text.contains("alpha: [1, 2]"));
}

#[test]
fn quotient_orders() {
    let out = bin()
        .args(["quotient", "--family", "ggs", "--level", "1", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], "3");
    let out = bin()
        .args(["quotient", "--family", "ggs", "--level", "2", "--json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], "27");
    // EGS level-2 order divides the ambient bound 3^4.
    let out = bin()
        .args(["quotient", "--family", "egs", "--level", "2", "--json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let order: u64 = v["order"].as_str().unwrap().parse().unwrap();
    assert_eq!(81 % order, 0);
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "no-congruence", "--family", "egs", "--n", "2", "--m", "3"],
        vec!["verify", "kernel-sum", "--p", "5", "--alpha", "1,2,3,4"],
        vec!["verify", "stab2-derived", "--p", "3", "--alpha", "2,1", "--m", "3"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert!(out.status.success(), "{:?}: {:?}", args, out);
        assert!(String::from_utf8(out.stdout).unwrap().contains("pass"));
    }
}

#[test]
fn usage_errors_exit_2() {
    let out = bin().args(["verify", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["group", "info", "--p", "4", "--alpha", "1,2,3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn portrait_dot_is_deterministic() {
    let run = || {
        bin()
            .args(["portrait", "--word", "[b,a]", "--depth", "3", "--dot"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("root [label=\"0\"]"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn portrait_builtin_t3() {
    let out = bin()
        .args(["portrait", "--builtin", "t_n", "--n", "3", "--depth", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["depth"], 4);
    assert_eq!(v["p"], 3);
}

#[test]
fn kernel_subcommands_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("asg.json");
    std::fs::write(&path, r#"{"p":3,"depth":1,"indices":[1,1,0,0]}"#).unwrap();
    let out = bin()
        .args(["kernel", "check", "--file", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"valid\":true"));
    // Zero-root convention rejects this assignment.
    let out = bin()
        .args(["kernel", "check", "--file", path.to_str().unwrap(), "--zero-root"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // Extension emits a deeper valid assignment.
    let out = bin()
        .args(["kernel", "extend", "--file", path.to_str().unwrap(), "--random", "--seed", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let ext_path = dir.path().join("ext.json");
    std::fs::write(&ext_path, &out.stdout).unwrap();
    let out = bin()
        .args(["kernel", "check", "--file", ext_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn kernel_witness_exit_codes() {
    let out = bin()
        .args(["kernel", "witness", "--family", "egs", "--n", "1", "--m", "3", "--word", "b*c"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"witness_found\":false"));
}

#[test]
fn verify_json_is_deterministic_modulo_timing() {
    let run = || {
        bin()
            .args(["verify", "all", "--seed", "11", "--json"])
            .output()
            .unwrap()
    };
    let strip = |raw: &[u8]| -> Vec<serde_json::Value> {
        String::from_utf8(raw.to_vec())
            .unwrap()
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("duration_ms");
                v
            })
            .collect()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
}

#[test]
fn cache_dir_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("BRANCHGROUPS_CACHE_DIR", dir.path())
        .args(["quotient", "--family", "ggs", "--level", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert!(!entries.is_empty());
}
