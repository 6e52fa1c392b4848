use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn labelcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_labelcover"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = labelcover(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(stdout(&out).trim()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lc");
    std::fs::write(&bad, "garbage\n").unwrap();
    assert_eq!(labelcover(&["stats", path(&bad)]).status.code(), Some(2));
    assert_eq!(labelcover(&["--enum-cap", "2", "solve", "exact", "fixtures/tiny1.lc"]).status.code(), Some(3));
    assert_eq!(labelcover(&["stats", "fixtures/does-not-exist.lc"]).status.code(), Some(1));
    assert_eq!(labelcover(&["stats", "fixtures/tiny1.lc"]).status.code(), Some(0));
}

#[test]
fn best_matches_golden() {
    let out = labelcover(&["approx", "best", "fixtures/tiny1.lc", "--json"]);
    assert!(out.status.success());
    let golden = std::fs::read_to_string("fixtures/tiny1.best.json").unwrap();
    assert_eq!(stdout(&out).trim(), golden.trim());
    let v: Value = serde_json::from_str(&golden).unwrap();
    assert_eq!(v["winner"], "greedy");
    assert_eq!(v["breakdown"].as_array().unwrap().len(), 5);
}

#[test]
fn stats_matches_golden() {
    let out = labelcover(&["stats", "fixtures/tiny1.lc", "--json"]);
    let golden = std::fs::read_to_string("fixtures/tiny1.stats.json").unwrap();
    assert_eq!(stdout(&out).trim(), golden.trim());
}

#[test]
fn verify_planted_assignment() {
    let out = labelcover(&["verify", "fixtures/tiny1.lc", "fixtures/tiny1.assign"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("satisfied = 6 = |E|"));
}

#[test]
fn ptas_record() {
    let v = json(&["--json", "ptas", "--eps", "0.5", "fixtures/grid4x4.lc"]);
    assert_eq!(v["guarantee"]["kind"], "fraction-of-optimum");
    assert_eq!(v["details"]["guarantee_form"], "(1-1/3)*OPT");
    assert_eq!(v["details"]["h"], 3);
}

#[test]
fn timing_is_opt_in() {
    let v = json(&["--json", "approx", "greedy", "fixtures/tiny1.lc"]);
    assert!(v.get("elapsed_ms").is_none());
    let v = json(&["--json", "--timing", "approx", "greedy", "fixtures/tiny1.lc"]);
    assert!(v["elapsed_ms"].is_number());
}

#[test]
fn solvers_and_smooth_commands_run() {
    for args in [
        &["--json", "solve", "exact", "fixtures/tiny1.lc"][..],
        &["--json", "solve", "dp", "fixtures/grid4x4.lc"],
        &["--json", "approx", "one-neighbor", "fixtures/random42.lc"],
        &["--json", "approx", "kyn", "fixtures/random42.lc"],
        &["--json", "approx", "kynn", "fixtures/random42.lc"],
        &["--json", "approx", "dnc", "fixtures/random42.lc"],
        &["--json", "smooth", "measure", "fixtures/smooth1.lc"],
        &["--json", "--seed", "3", "smooth", "exact", "fixtures/smooth1.lc"],
        &["--json", "smooth", "approx", "fixtures/smooth1.lc"],
    ] {
        let v = json(args);
        assert!(v.is_object(), "{args:?}");
    }
    let v = json(&["--json", "solve", "exact", "fixtures/tiny1.lc"]);
    assert_eq!(v["satisfied"], 6);
}

#[test]
fn gen_and_reduce_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let lc = dir.path().join("r.lc");
    let assign = dir.path().join("r.assign");
    let out = labelcover(&["--seed", "42", "gen", "random", "--out", path(&lc), "--plant-out", path(&assign)]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&lc).unwrap(), std::fs::read_to_string("fixtures/random42.lc").unwrap());
    let out = labelcover(&["verify", path(&lc), path(&assign)]);
    assert!(stdout(&out).contains("= |E|"));

    let col = dir.path().join("c.lc");
    assert!(labelcover(&["reduce", "3col", "fixtures/planar3x3.col", "--out", path(&col)]).status.success());
    let sol = dir.path().join("c.assign");
    assert!(labelcover(&["solve", "exact", path(&col), "--assign-out", path(&sol)]).status.success());
    let out = labelcover(&["reduce", "3col", "fixtures/planar3x3.col", "--extract", path(&sol)]);
    assert!(out.status.success());

    let mt = dir.path().join("t.lc");
    assert!(labelcover(&["reduce", "tiling", "fixtures/tiling2.mt", "--out", path(&mt)]).status.success());
    let sol = dir.path().join("t.assign");
    assert!(labelcover(&["solve", "exact", path(&mt), "--assign-out", path(&sol)]).status.success());
    let out = labelcover(&["reduce", "tiling", "fixtures/tiling2.mt", "--extract", path(&sol)]);
    assert!(stdout(&out).contains("stars: 0"));

    for kind in ["smooth", "grid", "3col", "tiling"] {
        let out = labelcover(&["gen", kind]);
        assert!(out.status.success(), "gen {kind}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn bench_writes_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = labelcover(&[
        "--json", "bench", "fixtures/corpus", "--algorithms", "greedy,best", "--out", path(dir.path()),
    ]);
    assert!(out.status.success());
    let lines: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let instances = std::fs::read_dir("fixtures/corpus").unwrap().count();
    assert_eq!(lines.len(), 2 * instances + 1);
    assert!(lines.last().unwrap()["summary"].is_array());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), instances);

    let out = labelcover(&["bench", "fixtures/corpus", "--algorithms", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}
