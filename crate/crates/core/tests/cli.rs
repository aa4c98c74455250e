use std::process::Command;

use msp::cli::run;

fn msp(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("msp").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_msp");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["replay", "triangle-greedy"]), Some(0));
    assert_eq!(status(&["replay", "no-such-fixture"]), Some(2));
    assert_eq!(status(&["estimate", "--instance", "hat", "--n", "3"]), Some(2));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = msp(&["--help"]);
    assert_eq!(code, 0);
    for cmd in ["simulate", "estimate", "sweep", "replay", "verify", "certify"] {
        assert!(out.contains(cmd), "help lists {cmd}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(msp(&["estimate", "--instance", "hat", "--n", "3"]).0, 2);
    assert_eq!(msp(&["verify", "nope"]).0, 2);
    assert_eq!(msp(&["replay", "nope"]).0, 2);
    assert_eq!(msp(&["estimate", "--instance", "hat", "--policy", "virtual-msp"]).0, 2);
    assert_eq!(msp(&["estimate", "--instance", "hat", "--n", "3", "--policy", "virtual-msp", "--p", "1.5"]).0, 2);
    assert_eq!(msp(&["estimate", "--instance", "hat", "--n", "3", "--policy", "dynkin"]).0, 2);
    assert_eq!(msp(&["frobnicate"]).0, 2);
}

#[test]
fn estimate_is_deterministic_and_reports_the_bound() {
    let args = [
        "estimate", "--instance", "hat", "--n", "4", "--policy", "virtual-msp", "--p", "0.5",
        "--trials", "2000", "--seed", "42",
    ];
    let (code, first, _) = msp(&args);
    assert_eq!(code, 0);
    assert_eq!(msp(&args).1, first);
    let json: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(json["analyticBound"], 0.25);
    assert_eq!(json["boundDirection"], "lower");
    assert!(json["minOverMwb"].as_f64().unwrap() > 0.25);
}

#[test]
fn estimate_exits_one_when_the_bound_is_missed() {
    let (code, _, _) = msp(&[
        "estimate", "--instance", "hat", "--n", "4", "--policy", "virtual-msp", "--trials", "500",
        "--bound", "0.9", "--direction", "lower",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn seed_defaults_from_environment() {
    let bin = env!("CARGO_BIN_EXE_msp");
    let args = ["simulate", "--instance", "hat", "--n", "3", "--policy", "virtual-msp"];
    let with_env = Command::new(bin).args(args).env("MSP_SEED", "17").output().unwrap();
    let explicit = Command::new(bin).args(args).args(["--seed", "17"]).env_remove("MSP_SEED").output().unwrap();
    assert_eq!(with_env.stdout, explicit.stdout);
}

#[test]
fn simulate_writes_trace_and_replays_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let schedule = dir.path().join("schedule.txt");
    let base = ["simulate", "--instance", "modified-hat", "--n", "3", "--policy", "virtual-msp"];
    let mut args: Vec<&str> = base.to_vec();
    let (t, s) = (trace.to_str().unwrap(), schedule.to_str().unwrap());
    args.extend(["--seed", "5", "--out", t, "--schedule-out", s]);
    assert_eq!(msp(&args).0, 0);
    let written = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(written.lines().count(), 13);

    let mut again: Vec<&str> = base.to_vec();
    again.extend(["--seed", "999", "--schedule", s]);
    assert_eq!(msp(&again).1, written);
}

#[test]
fn sweep_writes_one_row_per_cell() {
    let (code, out, _) = msp(&[
        "sweep", "--instance", "modified-hat", "--policy", "virtual-msp", "--ns", "2,4", "--ps",
        "0.3,0.5", "--trials", "300", "--element", "e_inf",
    ]);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(
        reader.headers().unwrap(),
        vec!["instance", "n", "policy", "p", "trials", "element", "freq", "ci", "bound"]
    );
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| &r[5] == "e_inf" && !r[8].is_empty()));
}

#[test]
fn replay_fixtures_pass() {
    for name in msp::fixtures::FIXTURES {
        let (code, out, err) = msp(&["replay", name]);
        assert_eq!(code, 0, "{name}: {err}");
        assert!(out.lines().all(|l| serde_json::from_str::<serde_json::Value>(l).is_ok()));
    }
}

#[test]
fn verify_and_certify() {
    let (code, out, _) = msp(&["verify", "mwb-lemmas", "--cases", "200", "--seed", "7"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("mwb-lemmas: 200 cases, 0 failures"));
    assert_eq!(msp(&["verify", "claw-blocker", "--n", "8", "--trials", "2000"]).0, 0);
    assert_eq!(msp(&["verify", "equivalences", "--cases", "100"]).0, 0);

    let (code, out, _) = msp(&["certify"]);
    assert_eq!(code, 0);
    let cert: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(cert["checkedAssignments"].as_u64().unwrap() > 0);
    assert!(!cert["violations"].as_array().unwrap().is_empty());
}

#[test]
fn verify_reports_the_forbidden_table_gap() {
    let (code, out, _) = msp(&["verify", "forbidden-consistency", "--n", "5", "--cases", "200", "--seed", "42"]);
    assert_eq!(code, 1);
    assert!(out.contains("e_inf rejected"));
}

#[test]
fn dump_then_estimate_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("hat.txt");
    let f = file.to_str().unwrap();
    assert_eq!(msp(&["dump", "--instance", "hat", "--n", "3", "--out", f]).0, 0);
    let (code, out, _) = msp(&[
        "estimate", "--instance", "file", "--file", f, "--policy", "virtual-msp", "--trials", "500",
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["elements"], 7);
    assert_eq!(msp(&["estimate", "--instance", "file", "--policy", "sample"]).0, 2);
}
