use std::path::Path;
use std::process::{Command, Output};

use pmu_cli::Report;

fn pmuplace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmuplace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report_of(out: &Output) -> Report {
    Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

#[test]
fn solve_with_zib_finds_three() {
    let out = pmuplace(&[
        "solve", "--case", "ieee14", "--zib", "--algo", "hbmo", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    assert_eq!(r.cardinality, 3);
    assert!(r.feasible);
    assert_eq!(r.seed, Some(7));
    assert!(r.params.is_some());
    let history = r.history.unwrap();
    assert!(history.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn exhaustive_solve_is_sorted() {
    let out = pmuplace(&["solve", "--case", "ieee14", "--algo", "exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    assert_eq!(r.cardinality, 4);
    assert!(r.placement.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(r.placement.len(), 4);
}

#[test]
fn missing_case_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out = pmuplace(&[
        "solve",
        "--case",
        "does/not/exist.case",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    assert!(!out_path.exists());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(pmuplace(&["solve"]).status.code(), Some(1));
    assert_eq!(
        pmuplace(&["solve", "--case", "ieee14", "--regime", "n-2"])
            .status
            .code(),
        Some(1)
    );
    let bad = pmuplace(&["verify", "--case", "ieee14", "--placement", "2,15"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    assert_eq!(pmuplace(&["--help"]).status.code(), Some(0));
}

#[test]
fn parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.case");
    std::fs::write(&path, "buses 3\nedge 1 1 4\n").unwrap();
    let out = pmuplace(&[
        "verify",
        "--case",
        path.to_str().unwrap(),
        "--placement",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 2"), "{msg}");
}

#[test]
fn verify_verdicts() {
    let pass = pmuplace(&[
        "verify",
        "--case",
        "ieee14",
        "--zib",
        "--regime",
        "pmu-loss",
        "--placement",
        "1,2,4,6,9,10,13",
    ]);
    assert_eq!(pass.status.code(), Some(0));
    assert!(report_of(&pass).checks.iter().all(|c| c.passed));

    let fail = pmuplace(&["verify", "--case", "ieee14", "--placement", "2,6,9"]);
    assert_eq!(fail.status.code(), Some(2));
    let r = report_of(&fail);
    assert_eq!(r.checks[0].failing, vec![8]);

    let empty = pmuplace(&["verify", "--case", "ieee14", "--placement", ""]);
    assert_eq!(empty.status.code(), Some(2));
}

#[test]
fn matpower_input_with_detection() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/ieee14.m");
    let out = pmuplace(&[
        "verify",
        "--case",
        path.to_str().unwrap(),
        "--detect-zib",
        "--zib",
        "--placement",
        "2,6,9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    assert_eq!(r.case.format, "matpower");
    assert_eq!(r.case.zib, vec![7]);
}

#[test]
fn certify_reports_oracle() {
    let out = pmuplace(&["certify", "--case", "ieee14", "--zib"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    assert_eq!(r.cardinality, 3);
    let oracle = r.oracle.unwrap();
    assert!(oracle.greedy_cardinality.unwrap() >= 3);
    assert!(oracle.optima >= 1);
}

#[test]
fn json_round_trips_and_repeats() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.json"));
        let out = pmuplace(&[
            "solve",
            "--case",
            "ieee14",
            "--zib",
            "--regime",
            "line-outage",
            "--seed",
            "3",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.stdout.is_empty());
        let text = std::fs::read_to_string(&path).unwrap();
        let mut report = Report::from_json(&text).unwrap();
        assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
        report.wall_time_ms = 0.0;
        texts.push(report.to_json());
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn params_file_overrides_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("params.toml");
    std::fs::write(&params, "max_iterations = 5\nseed = 11\nn_drones = 12\n").unwrap();
    let p = params.to_str().unwrap();
    let r = report_of(&pmuplace(&["solve", "--case", "ieee14", "--params", p]));
    assert_eq!(r.seed, Some(11));
    assert_eq!(r.history.as_ref().unwrap().len(), 5);
    let echo = r.params.unwrap();
    assert_eq!(echo.n_drones, 12);
    let r = report_of(&pmuplace(&[
        "solve", "--case", "ieee14", "--params", p, "--seed", "4",
    ]));
    assert_eq!(r.seed, Some(4));

    std::fs::write(&params, "n_dronez = 3\n").unwrap();
    assert_eq!(
        pmuplace(&["solve", "--case", "ieee14", "--params", p])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn text_report() {
    let out = pmuplace(&[
        "solve", "--case", "ieee14", "--algo", "greedy", "--report", "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("placement ["), "{text}");
}
