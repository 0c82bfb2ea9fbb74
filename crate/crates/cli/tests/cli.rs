mod common;

use common::{assert_valid, run, stdout};
use serde_json::Value;

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

#[test]
fn lah_table_csv() {
    let out = run(&["table", "lah", "--n-max", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\n0,1\n0,2,1\n0,6,6,1\n");
}

#[test]
fn stirling_first_kind_row_zero() {
    let out = run(&["table", "s1", "--n-max", "0", "--format", "csv"]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn lah_bell_numbers_json() {
    let out = run(&["table", "lahbell-numbers", "--n-max", "4"]);
    assert_eq!(stdout(&out), "[1,1,3,13,73]\n");
    assert_valid("table.schema.json", &json(&stdout(&out)));
}

#[test]
fn big_table_entries_keep_every_digit() {
    let out = run(&["table", "s2", "--n-max", "60"]);
    let text = stdout(&out);
    assert_valid("table.schema.json", &json(&text));
    // S2(60, 2) = 2^59 - 1, beyond what an f64 holds exactly.
    assert!(text.contains("576460752303423487"));
}

#[test]
fn table_cap() {
    assert_eq!(run(&["table", "lah", "--n-max", "201"]).status.code(), Some(3));
    assert_eq!(
        run(&["table", "lah", "--n-max", "20", "--cap", "10"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["table", "lah", "--n-max", "201", "--cap", "300"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["table", "bogus", "--n-max", "3"]).status.code(), Some(2));
    assert_eq!(run(&["table", "lah"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "dlahbell", "--n", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["poly", "bell", "--n", "2", "--at", "1/0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--dist", "poisson"]).status.code(), Some(2));
}

#[test]
fn poly_values() {
    let out = json(&stdout(&run(&["poly", "lahbell", "--n", "3", "--at", "2"])));
    assert_eq!(out["value"], "44");
    assert_eq!(out["variable"], "X");
    assert_valid("poly.schema.json", &out);

    let out = json(&stdout(&run(&[
        "poly", "dlahbell", "--n", "2", "--lambda", "1/2", "--at", "1",
    ])));
    assert_eq!(out["value"], "14/9");
    assert_eq!(out["variable"], "Y");
    assert_eq!(out["lambda"], "1/2");
    assert_valid("poly.schema.json", &out);

    let out = json(&stdout(&run(&["poly", "bell", "--n", "0"])));
    assert_eq!(out["coefficients"], json(r#"["1"]"#));
    assert_eq!(out["value"], Value::Null);
    assert_valid("poly.schema.json", &out);
}

#[test]
fn poly_csv() {
    let out = stdout(&run(&["poly", "bell", "--n", "0", "--format", "csv"]));
    assert_eq!(
        out,
        "family,n,variable,lambda,coefficients,value\nbell,0,X,,[1],\n"
    );
}

#[test]
fn evaluation_pole_exits_four() {
    let out = run(&["poly", "dlahbell", "--n", "2", "--lambda", "1/2", "--at", "-2"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn stirling_suite_passes_exactly() {
    let out = run(&["verify", "stirling", "--n-max", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut inversions = 0;
    for line in text.lines() {
        let report = json(line);
        assert_valid("verification-report.schema.json", &report);
        assert_eq!(report["status"], "PASS");
        assert_eq!(report["discrepancy"], "0");
        inversions += usize::from(
            report["identity"]
                .as_str()
                .unwrap()
                .starts_with("stirling-inversion"),
        );
    }
    assert_eq!(inversions, 2 * 13 * 13);
}

#[test]
fn whole_suite_passes_and_validates() {
    let out = run(&["verify", "all", "--samples", "20000", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut statistical = 0;
    for line in text.lines() {
        let report = json(line);
        assert_valid("verification-report.schema.json", &report);
        assert_eq!(report["status"], "PASS", "{line}");
        if report["mode"] == "STATISTICAL" {
            statistical += 1;
            assert_eq!(report["seed"], 0);
            assert_eq!(report["samples"], 20000);
        }
    }
    assert!(statistical > 0);
}

#[test]
fn dpoisson_suite_is_exact() {
    let out = run(&["verify", "dpoisson", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("identity,params,mode,lhs,rhs,discrepancy,status,seed,samples")
    );
    assert!(lines
        .filter(|l| l.starts_with("dpoisson-rising") && !l.starts_with("dpoisson-rising-mc"))
        .all(|l| l.contains(",EXACT,") && l.contains(",0,PASS,")));
}

#[test]
fn impossible_threshold_fails_statistical_checks() {
    let out = run(&["verify", "pgf", "--z-threshold", "0", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"FAIL\""));
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "lahbell",
        "--n-max",
        "5",
        "--seed",
        "9",
        "--samples",
        "5000",
    ];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn simulate_poisson_rising_moment() {
    let args = [
        "simulate",
        "--dist",
        "poisson",
        "--alpha",
        "2",
        "--moment",
        "rising",
        "--order",
        "3",
        "--samples",
        "1000000",
        "--seed",
        "42",
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&stdout(&out));
    assert_valid("simulation.schema.json", &report);
    assert_eq!(report["target"], "44");
    assert!(report["z"].as_f64().unwrap().abs() <= 5.0);
    assert_eq!(stdout(&out), stdout(&run(&args)));
}

#[test]
fn simulate_degenerate_poisson_mean() {
    let out = run(&[
        "simulate", "--dist", "dpoisson", "--alpha", "1", "--lambda", "1/2", "--moment", "raw", "--order",
        "1",
    ]);
    let report = json(&stdout(&out));
    assert_valid("simulation.schema.json", &report);
    assert_eq!(report["target"], "2/3");
    assert_eq!(report["moment_kind"], "RAW");
}

#[test]
fn simulate_with_workers_is_reproducible() {
    let args = [
        "simulate",
        "--dist",
        "binomial",
        "--n",
        "6",
        "--p",
        "1/3",
        "--samples",
        "50000",
        "--workers",
        "4",
    ];
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    let report = json(&first);
    assert_eq!(report["target"], "2");
    assert_eq!(report["sample_count"], 50000);
}

#[test]
fn signed_mass_exits_five_and_names_the_index() {
    let out = run(&[
        "simulate",
        "--dist",
        "dbinomial",
        "--n",
        "3",
        "--p",
        "1/10",
        "--lambda",
        "2/5",
    ]);
    assert_eq!(out.status.code(), Some(5));
    let message = String::from_utf8(out.stderr).unwrap();
    assert!(
        message.contains("index 2") && message.contains("-27/40"),
        "{message}"
    );
}

#[test]
fn simulate_csv() {
    let out = stdout(&run(&[
        "simulate", "--dist", "poisson", "--alpha", "1", "--order", "0", "--format", "csv",
    ]));
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("estimate,standard_error,sample_count,moment_kind,order,target,z,seed")
    );
    assert_eq!(lines.next(), Some("1,0,100000,RAW,0,1,0,0"));
}
