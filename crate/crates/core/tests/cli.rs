use std::process::{Command, Output};

use serde_json::Value;

fn ballq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ballq"))
        .args(args)
        .env_remove("BALLQ_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_json_reports_one_line_per_n() {
    let o = ballq(&["verify", "--family", "gamma", "--n", "1..=4"]);
    assert_eq!(o.status.code(), Some(0));
    let reports = json_lines(&o);
    assert_eq!(reports.len(), 4);
    for (i, r) in reports.iter().enumerate() {
        let n = i as i64 + 1;
        assert_eq!(r["schema_version"], 1);
        assert_eq!(r["family"], "gamma");
        assert_eq!(r["n"], n);
        assert_eq!(r["pass"], true);
        assert_eq!(r["invariants"]["chi"], n);
        assert_eq!(r["invariants"]["cusps"], n + 1);
    }
}

#[test]
fn markdown_matches_json() {
    let md = stdout(&ballq(&["verify", "--family", "gamma", "--n", "3", "--format", "markdown"]));
    assert!(md.contains("cusps: 4"), "{md}");
    let json = &json_lines(&ballq(&["verify", "--family", "gamma", "--n", "3"]))[0];
    let inv = &json["invariants"];
    for (label, key) in [("χ(X)", "chi"), ("K²", "k_squared"), ("c̄1²", "c1bar_squared"), ("c̄2", "c2bar")] {
        let row = format!("| {label} | {} |", inv[key]);
        assert!(md.contains(&row), "missing `{row}`");
    }
    assert!(md.contains(&format!("| volume | {} |", inv["volume"]["exact"].as_str().unwrap())));

    let md = stdout(&ballq(&["verify", "--family", "lambda", "--n", "3", "--format", "markdown"]));
    assert!(md.contains("cusps: 2"), "{md}");
}

#[test]
fn lambda_reports_two_cusps() {
    let o = ballq(&["verify", "--family", "lambda", "--n", "1..3", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let reports = json_lines(&o);
    assert_eq!(reports.len(), 3);
    for r in &reports {
        assert_eq!(r["invariants"]["cusps"], 2);
        assert_eq!(r["invariants"]["bmy"], "equality");
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--family", "gamma", "--n", "0"][..],
        &["verify", "--family", "delta", "--n", "1"],
        &["verify", "--family", "gamma", "--n", "5..2"],
        &["intersect", "graph:1", "graph:r,0", "--n", "1"],
        &["nonsense"],
    ] {
        assert_eq!(ballq(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(ballq(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_file_receives_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let o = ballq(&["verify", "--family", "gamma", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    let r: Value = serde_json::from_str(written.trim()).unwrap();
    assert_eq!(r["n"], 2);

    let missing = dir.path().join("absent").join("report.jsonl");
    let o = ballq(&["verify", "--family", "gamma", "--n", "2", "--out", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn spectrum_lists_multiples_of_eight_thirds() {
    let o = ballq(&["spectrum", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for row in ["| 1 | 8π²/3 |", "| 2 | 16π²/3 |", "| 3 | 8π² |"] {
        assert!(s.contains(row), "missing `{row}`");
    }
    let j: Value = serde_json::from_str(stdout(&ballq(&["spectrum", "4", "--format", "json"])).trim()).unwrap();
    assert_eq!(j["saturated"], true);
    assert_eq!(j["rows"][3]["coefficient_of_pi_squared"], "32/3");
}

#[test]
fn intersect_reports_points_and_degenerate_cases() {
    let o = ballq(&["intersect", "graph:1,0", "graph:r,-1/3+1/3r", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let j: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(j["result"], "points");
    assert_eq!(j["count"], 6);

    let j: Value = serde_json::from_str(stdout(&ballq(&["intersect", "graph:1,0", "graph:1,0", "--n", "1"])).trim()).unwrap();
    assert_eq!(j["result"], "identical");
    let j: Value =
        serde_json::from_str(stdout(&ballq(&["intersect", "graph:0,2/3", "graph:0,1", "--n", "1"])).trim()).unwrap();
    assert_eq!(j["result"], "empty");
    let j: Value =
        serde_json::from_str(stdout(&ballq(&["intersect", "graph:1,0", "fiber:1/2", "--n", "1"])).trim()).unwrap();
    assert_eq!(j["count"], 1);
}

#[test]
fn classify_names_type_or_violation() {
    let o = ballq(&["classify", "--order", "3", "--rotation", "rho", "--lambda", "rho"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("type 5"));

    let o = ballq(&["classify", "--order", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("unknown-group-order"));
    let o = ballq(&["classify", "--order", "4", "--rotation", "rho"]);
    assert!(stdout(&o).contains("lambda-constraint"));
    let o = ballq(&["classify", "--order", "9", "--rotation", "rho"]);
    assert!(stdout(&o).contains("translation-mismatch"));
}
