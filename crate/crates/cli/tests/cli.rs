use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legendrian")).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    (serde_json::from_slice(&out.stdout).unwrap(), out.status.code().unwrap())
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknot_ruling_polynomial() {
    let out = run(&["rulings", "catalog:unknot", "-m", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("R⁰(z) = z^-1"));
}

#[test]
fn verify_unknot_two_colors() {
    let (v, code) = run_json(&["verify", "catalog:unknot", "-n", "2", "-q", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["all_agree"], true);
    let want = ["1/6", "1/48"];
    for (row, w) in v["results"].as_array().unwrap().iter().zip(want) {
        for key in ["categorical", "closed_form", "ruling_side"] {
            assert_eq!(row[key], w);
        }
    }
}

#[test]
fn verify_trefoil() {
    let (v, code) = run_json(&["verify", "catalog:trefoil", "-n", "1", "-q", "2"]);
    assert_eq!(code, 0);
    let row = &v["results"][0];
    assert_eq!(row["rep_count"], 5);
    assert_eq!(row["categorical"], "5");
    assert_eq!(row["ruling_side"], "5");
}

#[test]
fn every_command_reports_schema() {
    let cases: [&[&str]; 8] = [
        &["catalog"],
        &["invariants", "catalog:trefoil"],
        &["dga", "catalog:figure8"],
        &["rulings", "catalog:trefoil", "-m", "1"],
        &["colored-ruling", "catalog:unknot", "-n", "2", "-q", "2"],
        &["reps", "catalog:trefoil", "-q", "2"],
        &["homcard", "catalog:figure8", "-q", "2,3"],
        &["verify", "catalog:unknot_s2", "-q", "2"],
    ];
    for args in cases {
        let (v, code) = run_json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["schema"], 1, "{args:?}");
    }
}

#[test]
fn json_is_independent_of_worker_count() {
    for args in [
        ["homcard", "catalog:trefoil", "-n", "2", "-q", "2,3"],
        ["reps", "catalog:figure8", "-n", "1", "-q", "2,3"],
    ] {
        let mut outputs = Vec::new();
        for jobs in ["1", "3", "8"] {
            let mut a = args.to_vec();
            a.extend(["--json", "--jobs", jobs]);
            outputs.push(run(&a).stdout);
        }
        assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn reads_diagrams_from_stdin() {
    let text = stdout(&run(&["catalog", "trefoil"]));
    let mut child = Command::new(env!("CARGO_BIN_EXE_legendrian"))
        .args(["invariants", "-", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tb"], 1);
    assert_eq!(v["rotation"], 0);
}

#[test]
fn reps_dump_matches_the_augmentation_count() {
    let (v, _) = run_json(&["reps", "catalog:trefoil", "-q", "2,3"]);
    let counts: Vec<u64> = v["results"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [5, 10]);
    let r = &v["results"][0]["representations"][0];
    assert_eq!(r["t"], serde_json::json!([[1]]));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["verify", "catalog:nope"],
        vec!["verify", "catalog:unknot", "-q", "6"],
        vec!["verify", "catalog:unknot", "-n", "0"],
        vec!["dga", "/nonexistent/front.txt"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    let path = std::env::temp_dir().join(format!("legendrian-bad-{}.txt", std::process::id()));
    std::fs::write(&path, "L 1\nX 5\n").unwrap();
    let out = run(&["invariants", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
