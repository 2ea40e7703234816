use std::path::Path;
use std::process::Command;

use pim_apsp::experiment::{run_cli, ExperimentError};

fn run(args: &[&str]) -> i32 {
    run_cli(std::iter::once("pim-apsp").chain(args.iter().copied()))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]), 2);
    assert_eq!(run(&["frobnicate"]), 2);
    assert_eq!(run(&["generate", "er", "--n", "10"]), 2);
    assert_eq!(run(&["solve", "--topology", "er", "--n", "50", "--seed", "1"]), 2);
    assert_eq!(run(&["simulate"]), 2);
    assert_eq!(run(&["--help"]), 0);
}

#[test]
fn missing_files_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.txt");
    assert_eq!(run(&["solve", "--input", s(&missing)]), 3);
    assert_eq!(run(&["report", s(&missing)]), 3);
    let garbage = dir.path().join("bad.txt");
    std::fs::write(&garbage, "3 1\n0 one 2\n").unwrap();
    assert_eq!(run(&["solve", "--input", s(&garbage)]), 3);
    assert_eq!(run(&["simulate", "--input", s(&garbage)]), 3);
    let bad_cfg = dir.path().join("dev.toml");
    std::fs::write(&bad_cfg, "no_such_key = 1\n").unwrap();
    let g = dir.path().join("g.txt");
    assert_eq!(run(&["generate", "er", "--n", "30", "--degree", "3", "--seed", "1", "--out", s(&g)]), 0);
    assert_eq!(run(&["simulate", "--input", s(&g), "--config", s(&bad_cfg)]), 3);
}

#[test]
fn verification_failure_exit_code() {
    assert_eq!(ExperimentError::Verification { mismatches: 3 }.exit_code(), 1);
    assert_eq!(ExperimentError::Usage("x".into()).exit_code(), 2);
    assert_eq!(ExperimentError::Schema("x".into()).exit_code(), 3);
}

#[test]
fn generate_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for fmt in ["edgelist", "csr"] {
        let (a, b) = (dir.path().join(format!("a.{fmt}")), dir.path().join(format!("b.{fmt}")));
        for out in [&a, &b] {
            let code = run(&[
                "generate", "nws", "--n", "200", "--k", "4", "--p", "0.1", "--seed", "5", "--format", fmt, "--out",
                s(out),
            ]);
            assert_eq!(code, 0);
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}

#[test]
fn solve_and_simulate_round_trip_through_report() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.csr");
    assert_eq!(
        run(&["generate", "er", "--n", "150", "--degree", "4", "--seed", "2", "--format", "csr", "--out", s(&g)]),
        0
    );
    let solved = dir.path().join("solved");
    let code = run(&[
        "solve", "--input", s(&g), "--tile-limit", "32", "--verify", "--sample", "150", "--out", s(&solved),
    ]);
    assert_eq!(code, 0);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(solved.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["verification"]["mismatches"], 0);
    assert_eq!(summary["verification"]["pairs_checked"], 150 * 150);
    assert!(solved.join("manifest.json").exists());

    let sim = dir.path().join("sim");
    assert_eq!(run(&["simulate", "--input", s(&g), "--tile-limit", "32", "--out", s(&sim)]), 0);
    let report = sim.join("g.json");
    assert!(report.exists(), "{:?}", std::fs::read_dir(&sim).unwrap().collect::<Vec<_>>());

    let table = dir.path().join("table.csv");
    let code = run(&["report", s(&report), s(&solved.join("summary.json")), "--out", s(&table)]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&table).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().contains("sim_report"));
    assert!(text.lines().nth(2).unwrap().contains("solve_summary"));
}

#[test]
fn report_of_nothing_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    assert_eq!(run(&["report", "--out", s(&out)]), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("source,kind,schema_version"));
    let md = dir.path().join("t.md");
    assert_eq!(run(&["report", "--format", "markdown", "--out", s(&md)]), 0);
    assert_eq!(std::fs::read_to_string(&md).unwrap().lines().count(), 2);
}

#[test]
fn report_rejects_mixed_schema_versions() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim");
    assert_eq!(
        run(&["simulate", "--topology", "er", "--n", "64", "--degree", "4", "--seed", "1,2", "--tile-limit", "32", "--out", s(&sim)]),
        0
    );
    let mut names: Vec<_> = std::fs::read_dir(&sim)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    names.sort();
    assert_eq!(names.len(), 2);
    assert_eq!(run(&["report", s(&names[0]), s(&names[1])]), 0);

    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&names[1]).unwrap()).unwrap();
    v["header"]["schema_version"] = 2.into();
    let future = dir.path().join("future.json");
    std::fs::write(&future, v.to_string()).unwrap();
    assert_eq!(run(&["report", s(&names[0]), s(&future)]), 3);

    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"hello\": 1}").unwrap();
    assert_eq!(run(&["report", s(&junk)]), 3);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pim-apsp");
    let status = Command::new(bin).arg("bogus").output().unwrap().status;
    assert_eq!(status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(bin)
        .args(["simulate", "--topology", "nws", "--n", "128", "--degree", "6", "--tile-limit", "64", "--print", "json"])
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["header"]["schema_version"], 1);
}
