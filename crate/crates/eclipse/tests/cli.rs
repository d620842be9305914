//! End-to-end tests of the `eclipse` binary: output format, exit codes, and
//! index round-trips through temporary files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eclipse"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("eclipse-cli-{}-{name}", std::process::id()));
    p
}

const RUNNING_EXAMPLE: &str = "\
id,x1,x2
1,1,6
2,4,4
3,6,1
4,8,5
";

#[test]
fn query_running_example_all_algorithms() {
    let data = tmp("running.csv");
    std::fs::write(&data, RUNNING_EXAMPLE).unwrap();
    for algo in ["base", "tran", "quad", "cutting"] {
        let out = run(&[
            "query",
            "--data",
            data.to_str().unwrap(),
            "--range",
            "0.25:2",
            "--algo",
            algo,
        ]);
        assert!(out.status.success(), "{algo}: {out:?}");
        assert_eq!(stdout(&out), "1\n2\n3\n", "{algo}");
    }
    std::fs::remove_file(&data).ok();
}

#[test]
fn exit_codes_follow_contract() {
    // 0: success (help counts as success).
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    // 1: usage errors — unknown subcommand, missing required argument.
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["query", "--range", "0.5:2"]).status.code(), Some(1));

    // 2: data errors — unreadable dataset, malformed range, bad CSV.
    let missing = tmp("does-not-exist.csv");
    let out = run(&[
        "query",
        "--data",
        missing.to_str().unwrap(),
        "--range",
        "0.5:2",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let data = tmp("ok.csv");
    std::fs::write(&data, RUNNING_EXAMPLE).unwrap();
    let out = run(&[
        "query",
        "--data",
        data.to_str().unwrap(),
        "--range",
        "2:0.5", // l > h
    ]);
    assert_eq!(out.status.code(), Some(2));

    let bad = tmp("bad.csv");
    std::fs::write(&bad, "id,x1,x2\n1,1,oops\n").unwrap();
    let out = run(&[
        "query",
        "--data",
        bad.to_str().unwrap(),
        "--range",
        "0.5:2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("2"), "parse error should name the line: {err}");

    std::fs::remove_file(&data).ok();
    std::fs::remove_file(&bad).ok();
}

#[test]
fn gen_build_query_round_trip() {
    let data = tmp("gen.csv");
    let out = run(&[
        "gen",
        "--n",
        "64",
        "--d",
        "3",
        "--kind",
        "ANTI",
        "--seed",
        "9",
        "--out",
        data.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");

    let mut expected = Vec::new();
    for algo in ["quad", "cutting"] {
        let idx = tmp(&format!("{algo}.idx"));
        let out = run(&[
            "build",
            "--data",
            data.to_str().unwrap(),
            "--algo",
            algo,
            "--out",
            idx.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "build {algo}: {out:?}");

        let out = run(&[
            "query",
            "--data",
            data.to_str().unwrap(),
            "--range",
            "0.36:2.75,0.36:2.75",
            "--algo",
            algo,
            "--index",
            idx.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "query {algo}: {out:?}");
        expected.push(stdout(&out));
        std::fs::remove_file(&idx).ok();
    }
    assert_eq!(expected[0], expected[1]);

    // The prebuilt-index answer matches the scan algorithms.
    let out = run(&[
        "query",
        "--data",
        data.to_str().unwrap(),
        "--range",
        "0.36:2.75,0.36:2.75",
        "--algo",
        "base",
    ]);
    assert_eq!(stdout(&out), expected[0]);
    std::fs::remove_file(&data).ok();
}

#[test]
fn gen_is_deterministic_and_env_seed_applies() {
    let a = run(&["gen", "--n", "8", "--d", "2", "--seed", "5"]);
    let b = run(&["gen", "--n", "8", "--d", "2", "--seed", "5"]);
    assert_eq!(stdout(&a), stdout(&b));

    let c = bin()
        .args(["gen", "--n", "8", "--d", "2"])
        .env("ECLIPSE_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(stdout(&a), stdout(&c), "env seed should match --seed 5");

    let d = run(&["gen", "--n", "8", "--d", "2", "--seed", "6"]);
    assert_ne!(stdout(&a), stdout(&d));
}

#[test]
fn expect_prints_a_number() {
    let out = run(&[
        "expect",
        "--n",
        "128",
        "--d",
        "2",
        "--range",
        "0.5:2",
        "--trials",
        "20",
        "--seed",
        "1",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    let mean: f64 = text.trim().parse().expect("numeric mean");
    assert!(mean >= 1.0 && mean < 64.0, "implausible mean {mean}");
}

#[test]
fn bench_reports_csv() {
    let out = run(&[
        "bench",
        "--n",
        "64",
        "--d",
        "2",
        "--reps",
        "2",
        "--algos",
        "base,tran",
        "--range",
        "0.5:2.0",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("algorithm"), "header: {header}");
    assert_eq!(lines.count(), 2);
}
