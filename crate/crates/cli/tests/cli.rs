use std::process::{Command, Output};

use serde_json::Value;

fn superq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn pairs_lists_three_families() {
    let o = superq(&["pairs"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("osp(2m+1|2n)       <-> osp(2n+1|2m)"));
    assert!(text.contains("sl(2m+1|2n)^(2)    <-> osp(2n+1|2m)^(1)"));
    assert!(text.contains("osp(2m+2|2n)^(2)   <-> osp(2n+2|2m)^(2)"));
    assert_eq!(json(&superq(&["pairs", "--format", "json"])).as_array().unwrap().len(), 3);
}

#[test]
fn systems_osp_2_1_prints_three() {
    let o = superq(&["systems", "osp", "2", "1"]);
    assert!(o.status.success());
    let headers: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with('[')).map(String::from).collect();
    assert_eq!(headers, ["[0] osp(5|2) eed", "[1] osp(5|2) ede", "[2] osp(5|2) dee"]);

    let v = json(&superq(&["systems", "osp-odd", "2", "1", "--format", "json"]));
    let systems = v.as_array().unwrap();
    assert_eq!(systems.len(), 3);
    assert_eq!(systems[0]["nodes"][2]["root"], "del1");
    assert_eq!(systems[0]["nodes"][2]["odd"], true);
}

#[test]
fn order_selector_accepts_index_and_code() {
    let by_index = json(&superq(&["systems", "osp", "2", "1", "--order", "1", "--format", "json"]));
    let by_code = json(&superq(&["systems", "osp", "2", "1", "--order", "ede", "--format", "json"]));
    assert_eq!(by_index, by_code);
    assert_eq!(by_index.as_array().unwrap().len(), 1);
}

#[test]
fn sweep_respects_rank_bound() {
    let v = json(&superq(&["systems", "osp", "--rank", "2", "--format", "json"]));
    let ranks: Vec<u64> = v.as_array().unwrap().iter().map(|s| s["m"].as_u64().unwrap() + s["n"].as_u64().unwrap()).collect();
    // 2 orders at rank 1, 1 + 2 + 1 at rank 2.
    assert_eq!(ranks, [1, 1, 2, 2, 2, 2]);
}

#[test]
fn verify_iso_osp_3_2_exits_zero() {
    let o = superq(&["verify-iso", "osp", "1", "1", "--order", "all"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).ends_with("2 of 2 reports passed\n"));
}

#[test]
fn verify_hopf_and_twist_pass_on_affine_pairs() {
    for cmd in ["verify-hopf", "verify-twist"] {
        let o = superq(&[cmd, "osp-aff2", "1", "1", "--format", "json"]);
        assert!(o.status.success(), "{cmd}");
        let v = json(&o);
        assert_eq!(v["ok"], true);
        assert_eq!(v["reports"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn failing_check_exits_one_with_witness() {
    let o = superq(&["verify-iso", "osp-aff2", "1", "1", "--order", "ed", "--printed-zero-images"]);
    assert_eq!(o.status.code(), Some(1));
    let witness: Value = serde_json::from_slice(&o.stderr).expect("witness is JSON");
    let failures = witness[0]["failures"].as_array().unwrap();
    assert!(failures.iter().any(|f| f["check"] == "round-trip"));
}

#[test]
fn usage_errors_exit_nonzero_on_stderr() {
    for args in [
        &["systems", "nope", "1", "1"][..],
        &["systems", "osp", "1"],
        &["systems", "osp", "1", "1", "--order", "9"],
        &["systems", "osp", "1", "1", "--order", "xx"],
        &["systems", "osp", "--order", "0"],
        &["verify-iso", "sl", "1", "1"],
        &["systems", "osp", "1", "1", "--format", "dot"],
        &["frobnicate"],
    ] {
        let o = superq(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn fixed_seed_gives_identical_reports() {
    let args = ["verify-iso", "osp", "2", "1", "--prescreen", "--seed", "11", "--format", "json"];
    let a = superq(&args);
    let b = superq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let path = std::env::temp_dir().join(format!("superq-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let c = superq(&[&args[..], &["--out", p]].concat());
    assert!(c.status.success());
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn dynkin_renders_both_sides() {
    let o = superq(&["dynkin", "osp", "2", "1", "--order", "eed"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("φ -> osp(3|4) dde"));
    let dot = stdout(&superq(&["dynkin", "osp", "2", "1", "--order", "eed", "--format", "dot"]));
    assert_eq!(dot.matches("graph dynkin {").count(), 2);

    let v = json(&superq(&["dynkin", "osp-even", "1", "1", "--format", "json"]));
    assert!(v.as_array().unwrap().iter().all(|s| s["phi"].is_null()));
}

#[test]
fn present_dumps_relations() {
    let v = json(&superq(&["present", "osp", "1", "0", "--format", "json", "--negate-q"]));
    let p = &v[0];
    assert_eq!(p["name"], "osp(3|0)");
    assert_eq!(p["sign"], "-q");
    assert_eq!(p["generators"].as_array().unwrap().len(), 5);
    let families: Vec<&str> = p["relations"].as_array().unwrap().iter().map(|r| r["family"].as_str().unwrap()).collect();
    assert!(families.contains(&"ef"));
}
