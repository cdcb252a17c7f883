use std::path::PathBuf;
use std::process::Command as Process;

use ksubmod::cli::{run, Command, ProblemKind, RunConfig, EXIT_NO_SOLUTION, EXIT_OK, EXIT_PARSE};
use ksubmod::HalfCost;

const TRIANGLE: &str = "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";

fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ksub-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn structured(command: Command, input: PathBuf) -> RunConfig {
    RunConfig { command, input: Some(input), structured: true, ..RunConfig::default() }
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

#[test]
fn triangle_vertex_cover() {
    let out = run(&structured(Command::Solve, write("tri.gr", TRIANGLE)));
    assert_eq!(out.code, EXIT_OK, "{}", out.report);
    assert_eq!(field(&out.report, "status"), Some("ok"));
    assert_eq!(field(&out.report, "cost_halves"), Some("4"));
    assert_eq!(field(&out.report, "certificate").unwrap().split(' ').count(), 2);
    assert_eq!(field(&out.report, "relax_halves"), Some("3"));

    let relaxed = run(&structured(Command::Relax, write("tri-relax.gr", TRIANGLE)));
    assert_eq!(field(&relaxed.report, "relax_halves"), Some("3"));
}

#[test]
fn budget_too_small() {
    let cfg = RunConfig { budget: Some(HalfCost::from_units(1)), ..structured(Command::Solve, write("tri-b.gr", TRIANGLE)) };
    let out = run(&cfg);
    assert_eq!(out.code, EXIT_NO_SOLUTION, "{}", out.report);
}

#[test]
fn malformed_and_missing_input() {
    assert_eq!(run(&structured(Command::Solve, write("bad.gr", "p edge 3 2\ne 1 2\n"))).code, EXIT_PARSE);
    assert_eq!(run(&structured(Command::Solve, write("range.gr", "p edge 2 1\ne 1 3\n"))).code, EXIT_PARSE);
    assert_eq!(run(&structured(Command::Solve, PathBuf::from("/nonexistent/input.gr"))).code, EXIT_PARSE);
}

#[test]
fn consistent_ulc_costs_nothing() {
    // label(2) = label(1) + 1, label(3) = label(2) + 1, label(1) = label(3) + 1 (mod 3)
    let text = "p ulc 3 3 3\ne 1 2 1 2 3 1\ne 2 3 1 2 3 1\ne 3 1 1 2 3 1\n";
    let out = run(&structured(Command::Solve, write("cycle.ulc", text)));
    assert_eq!(out.code, EXIT_OK, "{}", out.report);
    assert_eq!(field(&out.report, "cost_halves"), Some("0"));
}

#[test]
fn wcnf_contradiction() {
    let text = "p wcnf 1 2 10\n3 1 0\n2 -1 0\n";
    let out = run(&structured(Command::Solve, write("contra.wcnf", text)));
    assert_eq!(out.code, EXIT_OK, "{}", out.report);
    assert_eq!(field(&out.report, "cost_halves"), Some("4"));
    assert_eq!(field(&out.report, "certificate"), Some("2"));
}

#[test]
fn group_feedback_vertex_set() {
    let text = "p gfvs 3 3 z 3\ne 1 2 1\ne 2 3 0\ne 3 1 0\n";
    let out = run(&structured(Command::Solve, write("tri.gfvs", text)));
    assert_eq!(out.code, EXIT_OK, "{}", out.report);
    assert_eq!(field(&out.report, "cost_halves"), Some("2"));

    let fvs = RunConfig { problem: Some(ProblemKind::Fvs), ..structured(Command::Solve, write("tri-fvs.gr", TRIANGLE)) };
    let out = run(&fvs);
    assert_eq!(field(&out.report, "cost_halves"), Some("2"), "{}", out.report);

    // Identity labels only: nothing to delete.
    let null = "p gfvs 3 3 z 3\ne 1 2 0\ne 2 3 0\ne 3 1 0\n";
    let out = run(&structured(Command::Solve, write("null.gfvs", null)));
    assert_eq!(field(&out.report, "cost_halves"), Some("0"), "{}", out.report);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ksub");
    let ok = Process::new(bin).args(["--structured", "solve"]).arg(write("bin.gr", TRIANGLE)).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("cost_halves=4"));

    let tight = Process::new(bin).args(["solve", "-b", "1½"]).arg(write("bin2.gr", TRIANGLE)).output().unwrap();
    assert_eq!(tight.status.code(), Some(EXIT_NO_SOLUTION));

    let verify = Process::new(bin).args(["verify", "--cases", "10"]).output().unwrap();
    assert_eq!(verify.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&verify.stdout));
}
