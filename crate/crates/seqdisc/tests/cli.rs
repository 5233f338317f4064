//! End-to-end checks of the `seqdisc` binary: exit codes, output
//! determinism, dataset contents, and configuration precedence.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_seqdisc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "`{}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn parse_csv(text: &str, expect_header: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(expect_header));
    lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn parameter_errors_exit_with_two() {
    for args in [
        &["optimize", "--s", "1.0"][..],
        &["optimize", "--eta1", "0.0"][..],
        &[
            "sweep", "--axis", "q1b", "--s", "0.25", "--from", "0.9", "--to", "0.2",
        ][..],
        &["sweep", "--s", "0.25"][..], // no axis
        &["simulate", "--trials", "0"][..],
        &["simulate", "--q1b", "0.5"][..], // partial custom strategy
        &["simulate", "--scheme", "flip-flop", "--t", "0.5"][..],
        &["optimize", "--scheme", "success-only", "--c", "0.5"][..],
        &["figure", "fig10"][..], // unknown dataset id
        &["frobnicate"][..],      // unknown subcommand
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "`{}` should exit 2; stderr: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn io_failures_exit_with_three() {
    let out = run(&[
        "figure",
        "fig1",
        "--resolution",
        "5",
        "-o",
        "/nonexistent-seqdisc-dir/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("/nonexistent-seqdisc-dir/out.csv"),
        "error should name the path: {stderr}"
    );

    let out = run(&["optimize", "--config", "/nonexistent-seqdisc-dir/cfg"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = &["simulate", "--s", "0.25", "--trials", "2000", "--seed", "9"];
    let first = stdout_of(args);
    let second = stdout_of(args);
    assert_eq!(first, second);

    // Thread count must not leak into the sampled stream.
    let threaded = |n: &str| {
        let out = bin()
            .args(args)
            .env("SEQDISC_THREADS", n)
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    assert_eq!(threaded("1"), threaded("3"));
    assert_eq!(threaded("1"), first);

    let out = bin()
        .args(args)
        .env("SEQDISC_THREADS", "zero")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn success_only_dataset_round_trips_through_the_library() {
    let text = stdout_of(&["figure", "fig1", "--resolution", "9"]);
    let rows = parse_csv(&text, "s,q1b,p_ss");
    assert_eq!(rows.len(), 4 * 9);
    for row in rows {
        let s: f64 = row[0].parse().unwrap();
        let q1b: f64 = row[1].parse().unwrap();
        let p_ss: f64 = row[2].parse().unwrap();
        let problem = seqdisc::model::DiscriminationProblem::new(s, 0.5).unwrap();
        let expected = seqdisc::optimize::symmetric_joint_success(&problem, q1b);
        assert!(
            (p_ss - expected).abs() < 1e-9,
            "row ({s}, {q1b}) re-evaluates to {expected}, file says {p_ss}"
        );
    }
}

#[test]
fn strategy_comparison_dataset_contains_the_crossover() {
    let text = stdout_of(&["figure", "fig2", "--resolution", "41"]);
    let rows = parse_csv(&text, "s,p_ss_interior,p_ss_boundary,p_ss_opt");
    let s_c = 3.0 - 2.0 * 2.0f64.sqrt();
    let hit = rows
        .iter()
        .find(|row| (row[0].parse::<f64>().unwrap() - s_c).abs() < 1e-6)
        .expect("crossover row present");
    let interior: f64 = hit[1].parse().unwrap();
    let boundary: f64 = hit[2].parse().unwrap();
    assert!(
        (interior - boundary).abs() < 1e-6,
        "families should agree at the crossover: {interior} vs {boundary}"
    );
    // Rows stay sorted after the extra point is inserted.
    let mut prev = f64::NEG_INFINITY;
    for row in &rows {
        let s: f64 = row[0].parse().unwrap();
        assert!(s > prev);
        prev = s;
    }
}

#[test]
fn flipflop_sweep_peaks_at_the_unbiased_point() {
    let text = stdout_of(&["sweep", "--axis", "c", "--s", "0.25", "--resolution", "101"]);
    let rows = parse_csv(
        &text,
        "c,p_single_success,p_sequential_joint,p_sequential_failure,i_ff_ab,i_ff_bc",
    );
    assert_eq!(rows.len(), 101);
    let best = rows
        .iter()
        .max_by(|a, b| {
            let ia: f64 = a[4].parse().unwrap();
            let ib: f64 = b[4].parse().unwrap();
            ia.total_cmp(&ib)
        })
        .unwrap();
    let c_best: f64 = best[0].parse().unwrap();
    assert!(
        (c_best - 0.5).abs() < 1e-12,
        "information should peak at c = 1/2, got {c_best}"
    );
}

#[test]
fn optimize_report_shape() {
    let text = stdout_of(&["optimize", "--s", "0.25", "--eta1", "0.4"]);
    let report: Value = serde_json::from_str(&text).expect("valid json");
    assert_eq!(report["problem"]["s"], 0.25);
    assert_eq!(report["problem"]["eta1"], 0.4);
    assert_eq!(report["scheme"], "min-failure");
    for key in ["p_ss", "p_ff", "regime", "method"] {
        assert!(
            !report["result"][key].is_null(),
            "result.{key} missing in: {text}"
        );
    }
    for key in ["t", "q1b", "q2b", "q1c", "q2c"] {
        assert!(
            report["result"]["strategy"][key].is_f64(),
            "result.strategy.{key} missing in: {text}"
        );
    }
    for key in ["guessing_ab", "usd_ab", "usd_ac", "usd_bc"] {
        assert!(
            report["information"][key].is_f64(),
            "information.{key} missing"
        );
    }
    // Closed form for the two-state minimum-error information exists only
    // for equal priors; the field must be explicitly null otherwise.
    assert!(report["information"]["helstrom_ab"].is_null());

    let equal = stdout_of(&["optimize", "--s", "0.25"]);
    let report: Value = serde_json::from_str(&equal).expect("valid json");
    assert!(report["information"]["helstrom_ab"].is_f64());
}

#[test]
fn qkd_outputs_are_mutually_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let keys_path = dir.path().join("keys.txt");
    let summary_path = dir.path().join("summary.json");
    let out = run(&[
        "qkd",
        "--s",
        "0.25",
        "--trials",
        "4000",
        "--seed",
        "3",
        "--out-keys",
        keys_path.to_str().unwrap(),
        "--out-summary",
        summary_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let keys = std::fs::read_to_string(&keys_path).unwrap();
    let lines: Vec<&str> = keys.lines().collect();
    assert_eq!(lines.len(), 3);
    for line in &lines {
        assert!(line.bytes().all(|b| b == b'0' || b == b'1'));
    }

    let summary: Value =
        serde_json::from_str(&std::fs::read_to_string(&summary_path).unwrap()).unwrap();
    for (name, line) in ["ab", "ac", "abc"].iter().zip(&lines) {
        let entry = &summary["keys"][name];
        let n = entry["n_conclusive"].as_u64().unwrap() as usize;
        assert_eq!(n, line.len(), "{name} key length mismatch");
        let rate = entry["rate"].as_f64().unwrap();
        assert!((rate - line.len() as f64 / 4000.0).abs() < 1e-12);
        let ones = line.bytes().filter(|&b| b == b'1').count();
        let balance = entry["balance"].as_f64().unwrap();
        let expected = if line.is_empty() {
            0.0
        } else {
            ones as f64 / line.len() as f64
        };
        assert!((balance - expected).abs() < 1e-12);
    }
}

#[test]
fn config_file_feeds_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# sample run\ns = 0.5\neta1 = 0.3\nscheme = success-only\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();

    let text = stdout_of(&["optimize", "--config", cfg]);
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["problem"]["s"], 0.5);
    assert_eq!(report["problem"]["eta1"], 0.3);
    assert_eq!(report["scheme"], "success-only");

    let text = stdout_of(&["optimize", "--config", cfg, "--s", "0.1"]);
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["problem"]["s"], 0.1);
    assert_eq!(report["problem"]["eta1"], 0.3);

    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "s = 0.5\nsigma = 1\n").unwrap();
    let out = run(&["optimize", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("line 2") && stderr.contains("sigma"),
        "diagnostic should locate the bad key: {stderr}"
    );
}

#[test]
fn simulate_report_matches_its_operating_point() {
    let dir = tempfile::tempdir().unwrap();
    let ledger_path = dir.path().join("ledger.csv");
    let text = stdout_of(&[
        "simulate",
        "--s",
        "0.4",
        "--scheme",
        "min-failure",
        "--trials",
        "3000",
        "--seed",
        "12",
        "--out-ledger",
        ledger_path.to_str().unwrap(),
    ]);
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["trials"], 3000);
    assert_eq!(report["seed"], 12);
    // Every analytic reference carries a finite z-score at an interior point.
    let z = report["z_scores"].as_object().unwrap();
    assert!(!z.is_empty());
    for (name, value) in z {
        let value = value
            .as_f64()
            .unwrap_or_else(|| panic!("z-score {name} should be finite at an interior point"));
        assert!(value.abs() < 5.0, "{name} off by {value} sigma");
    }

    let ledger = std::fs::read_to_string(&ledger_path).unwrap();
    assert_eq!(ledger.lines().count(), 3001);
    assert!(ledger.lines().next().unwrap().starts_with("trial,prepared"));
}

#[test]
fn figure_files_match_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig4.csv");
    let from_stdout = stdout_of(&["figure", "fig4", "--resolution", "11"]);
    let out = run(&[
        "figure",
        "fig4",
        "--resolution",
        "11",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), from_stdout);
    assert!(Path::new(&path).exists());
}
