use std::f64::consts::PI;
use std::process::{Command, Output};

use dualbasis::pairing::{PairingReport, Verdict};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualbasis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const QUICK: &[&str] = &["pairings", "--nodes", "100", "--series-k", "500", "--a-variant", "standard"];

#[test]
fn kernels_two_node_sin_row() {
    let o = run(&["kernels", "--j", "2", "--parity", "sin"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("| value | 0 | 1 | 0 | 1 | 0 | -1 | 0 | -1 |"));
    assert!(stdout(&o).contains("| two-node closed form within 1e-12 | PASS |"));
}

#[test]
fn kernels_four_node_cos_row() {
    let o = run(&["kernels", "--j", "4", "--parity", "cos"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("| value | 0 | 1 | 0 | -1 | 0 | 1 | 0 | -1 | 0 | -1 | 0 | 1 | 0 | -1 | 0 | 1 |"));
}

#[test]
fn kernels_three_node_against_direct_sum() {
    let o = run(&["kernels", "--j", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let vals: Vec<f64> = v["kernel"]["period_values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(vals.len(), 12);
    for (k, got) in vals.iter().enumerate() {
        let direct: f64 = (0..3)
            .map(|j| {
                let t = (2 * j + 1) as f64 * PI / 6.0;
                (k as f64 * t).sin() / t.sin()
            })
            .sum::<f64>()
            / 3.0;
        assert!((got - direct).abs() < 1e-9, "k={k}: {got} vs {direct}");
        assert!((got + vals[(k + 6) % 12]).abs() < 1e-12);
    }
}

#[test]
fn kernels_vanishing_cos_node_is_an_error() {
    let o = run(&["kernels", "--j", "1", "--parity", "cos"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cos node vanishes"));
}

#[test]
fn ladder_default_all_pass() {
    let o = run(&["ladder"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("| PASS |").count(), 9, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn ladder_smallest_block() {
    let o = run(&["ladder", "--dim", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = v.as_array().unwrap().iter().find(|r| r["identity"] == "[L,R] = I").unwrap();
    assert_eq!(row["status"], "PASS");
}

#[test]
fn ladder_order_zero_skips_eigen_relation() {
    let o = run(&["ladder", "--order", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("| SKIP |"));
    assert!(out.contains("through t^0 | PASS |"));
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["pairings", "--nodes", "201"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("N must be even"));

    let o = run(&["bridge", "--s", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("s must be ≥ 2"));

    let o = run(&["kernels", "--parity", "tan"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["ladder", "--dim", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bridge_reports_poles_and_mismatch() {
    let o = run(&["bridge", "--series-k", "20000", "--bilateral-l", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("| 1.6449340668 | 1.6449340668 |"));
    assert!(out.contains("pole in bilateral chain at l = 0"));
    assert!(out.contains("pole in bilateral chain at l = -1"));
    assert!(out.contains("| (4,3) | sin |"));
}

#[test]
fn pairings_markdown_shows_targets_and_verdicts() {
    let o = run(QUICK);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("| (1,1) | -0.00082"));
    assert!(out.contains("1/16 = 0.0625000000 | 0.0625000000 |"));
    assert!(out.contains("**converged-mismatch**"));
}

#[test]
fn pairings_unconverged_cells_exit_one() {
    let o = run(&["pairings", "--nodes", "20", "--series-k", "300", "--a-variant", "standard"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("UNCONVERGED"));
}

#[test]
fn pairings_json_round_trips_and_matches_csv() {
    let json = run(&[QUICK, &["--format", "json"]].concat());
    assert_eq!(json.status.code(), Some(0));
    let text = stdout(&json);
    let reports: Vec<PairingReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 16);
    let again: Vec<PairingReport> = serde_json::from_str(&serde_json::to_string(&reports).unwrap()).unwrap();
    assert_eq!(reports, again);
    assert!(reports.iter().all(|r| r.verdict != Verdict::Unconverged));

    let csv = run(&[QUICK, &["--format", "csv"]].concat());
    let csv = stdout(&csv);
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let first = serde_json::from_str::<serde_json::Value>(&text).unwrap()[0].clone();
    let mut keys: Vec<&str> = first.as_object().unwrap().keys().map(String::as_str).collect();
    let mut sorted = header.clone();
    keys.sort_unstable();
    sorted.sort_unstable();
    assert_eq!(sorted, keys);
    assert_eq!(lines.count(), reports.len());
    let qv = header.iter().position(|h| *h == "quadrature_value").unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[qv].parse::<f64>().unwrap(), reports[0].quadrature_value);
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let a = run(QUICK);
    let b = run(QUICK);
    assert_eq!(a.stdout, b.stdout);

    let path = std::env::temp_dir().join(format!("dualbasis-cli-{}.md", std::process::id()));
    let o = run(&[QUICK, &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_file(path).unwrap();
}
