use std::process::Command;

use cover_games::cover::{Cover, CoverSeq, Region};
use cover_games::io::{write_json, CoversFile, PicksFile};
use cover_games::rational::{q, qi};
use cover_games::registry::builtin;
use cover_games::space::DEFAULT_POINT_CAP;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cover-games"))
}

fn report(out: &std::process::Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

/// Two crossing intervals repeated; picks keep only the left piece at the end.
fn fixture(dir: &std::path::Path) {
    let s = builtin("interval_h16", DEFAULT_POINT_CAP).unwrap();
    let left = Region::open_box(&s, vec![qi(-1)], vec![q(3, 5)]).unwrap();
    let right = Region::open_box(&s, vec![q(2, 5)], vec![qi(2)]).unwrap();
    let cover = Cover::whole(&s, vec![left, right]);
    let seq = CoverSeq::new(vec![cover.clone(), cover.clone(), cover.clone(), cover]);
    write_json(&dir.join("covers.json"), &CoversFile::from_seq(&seq)).unwrap();
    write_json(
        &dir.join("picks.json"),
        &PicksFile {
            picks: vec![vec![0, 1], vec![0, 1], vec![0], vec![0]],
        },
    )
    .unwrap();
}

#[test]
fn passing_run_exits_zero() {
    let out = bin()
        .args(["demo", "--space", "interval_h64", "--horizon", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["command"], "demo");
    assert!(r.as_object().unwrap().keys().next_back().unwrap() == "wall_time_ms");
}

#[test]
fn failed_check_exits_one_with_a_point() {
    let dir = tempfile::tempdir().unwrap();
    fixture(dir.path());
    let out = bin()
        .args([
            "check",
            "--kind",
            "hurewicz",
            "--space",
            "builtin:interval_h16",
        ])
        .arg("--covers")
        .arg(dir.path().join("covers.json"))
        .arg("--picks")
        .arg(dir.path().join("picks.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["passed"], false);
    let p = r["checks"][0]["witness"]["point"].as_u64().unwrap();
    // the last picks stop at 3/5
    assert!(p * 5 >= 3 * 16);
    assert!(r["inputs"]["covers"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));
}

#[test]
fn menger_passes_on_the_same_picks() {
    let dir = tempfile::tempdir().unwrap();
    fixture(dir.path());
    let out = bin()
        .args([
            "check",
            "--kind",
            "menger",
            "--space",
            "builtin:interval_h16",
        ])
        .arg("--covers")
        .arg(dir.path().join("covers.json"))
        .arg("--picks")
        .arg(dir.path().join("picks.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_and_input_errors_exit_two() {
    let out = bin().args(["game"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["net", "--space", "builtin:torus", "--epsilon", "1/2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("torus"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"covers\": [\n  }").unwrap();
    let out = bin()
        .args(["scfin", "--space", "builtin:interval_h16", "--covers"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json:2:"));
}

#[test]
fn config_and_environment_set_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"tail_slack": 2, "margin": "1/64"}"#).unwrap();
    let out = bin()
        .args([
            "demo",
            "--space",
            "interval_h16",
            "--horizon",
            "4",
            "--config",
        ])
        .arg(&cfg)
        .env("COVER_GAMES_POINT_CAP", "100")
        .output()
        .unwrap();
    let r = report(&out);
    assert_eq!(r["config"]["tail_slack"], 2);
    assert_eq!(r["config"]["margin"], "1/64");
    assert_eq!(r["config"]["point_cap"], 100);

    let out = bin()
        .args(["demo", "--space", "interval_h256"])
        .env("COVER_GAMES_POINT_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(&cfg, r#"{"horizonn": 3}"#).unwrap();
    let out = bin()
        .args(["demo", "--space", "point", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = bin()
        .args([
            "net",
            "--space",
            "builtin:interval_h8",
            "--epsilon",
            "1/4",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(r["result"]["size"], 5);
}
