use listcolor::graph;
use listcolor::harness::{
    crossings, monotone_violations, records_csv, run_point, sweep, wilson_interval, write_outputs, Detector, ExprError,
    HarnessError, Outcome, PointEstimate, PointOptions, ScalingExpr, SweepConfig, TrialRecord, Z95,
};
use proptest::prelude::*;

fn config(workers: Option<usize>) -> SweepConfig {
    let mut c = SweepConfig::from_json(
        r#"{
            "family": {"type": "clique_union", "delta": 3},
            "n": [40, 60],
            "k": 2,
            "sigma": [3, 5, "n/4", "n/2"],
            "trials": 150,
            "base_seed": 17,
            "detectors": ["bad_triple", "critical"]
        }"#,
    )
    .unwrap();
    c.workers = workers;
    c
}

#[test]
fn records_are_identical_across_worker_counts() {
    let one = sweep(&config(Some(1))).unwrap();
    let many = sweep(&config(Some(4))).unwrap();
    let default = sweep(&config(None)).unwrap();
    let csv = records_csv(&one.records, false);
    assert_eq!(csv, records_csv(&many.records, false));
    assert_eq!(csv, records_csv(&default.records, false));
    assert_eq!(one.points, many.points);
}

#[test]
fn records_are_sorted_with_versioned_header() {
    let r = sweep(&config(None)).unwrap();
    let csv = records_csv(&r.records, false);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# listcolor-records v1"));
    assert_eq!(lines.next(), Some("n,k,sigma,trial_index,seed,outcome,solve_nodes,certificate"));
    let keys: Vec<(u64, u64, u64)> = r.records.iter().map(|t| (t.n, t.sigma, t.trial_index)).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
    assert_eq!(r.records.len(), 2 * 4 * 150);
    // Uncolorable rows carry the first detector that fired.
    for t in &r.records {
        assert_eq!(t.certificate.is_some(), t.outcome == Outcome::Uncolorable);
    }
    let timed = records_csv(&r.records, true);
    assert!(timed.lines().nth(1).unwrap().ends_with(",wall_micros"));
}

#[test]
fn outputs_land_in_directory() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(None);
    let r = sweep(&cfg).unwrap();
    write_outputs(dir.path(), &cfg, &r).unwrap();
    let csv = std::fs::read_to_string(dir.path().join("records.csv")).unwrap();
    assert_eq!(csv, records_csv(&r.records, false));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["points"].as_array().unwrap().len(), 8);
    assert_eq!(summary["format"], "listcolor-records v1");
}

#[test]
fn triangle_with_two_lists_of_three() {
    // Uncolorable exactly when all three lists coincide: 3 of 27 outcomes.
    let g = graph::complete(3);
    let trials = 40_000;
    let (est, _) = run_point(&g, 3, 2, 3, trials, 8, &PointOptions::default()).unwrap();
    let p = 8.0 / 9.0;
    let se = (p * (1.0 - p) / trials as f64).sqrt();
    assert!((est.p_hat - p).abs() < 3.0 * se, "p_hat {} vs {p}", est.p_hat);
    assert!(est.ci_low < p && p < est.ci_high);
}

#[test]
fn forced_lists_give_zero() {
    let g = graph::clique_union(15, 2).unwrap();
    let (est, recs) = run_point(&g, 15, 2, 2, 1000, 1, &PointOptions::default()).unwrap();
    assert_eq!(est.p_hat, 0.0);
    assert_eq!(est.completed, 1000);
    assert!(recs.iter().all(|r| r.outcome == Outcome::Uncolorable));
}

#[test]
fn detectors_report_certificates() {
    let g = graph::cycle(5).unwrap();
    let opts = PointOptions {
        detectors: vec![Detector::TreeBad, Detector::BadTriple],
        ..PointOptions::default()
    };
    let (_, recs) = run_point(&g, 5, 2, 2, 5, 1, &opts).unwrap();
    assert!(recs.iter().all(|r| r.certificate == Some("tree_bad")));
}

fn record(outcome: Outcome) -> TrialRecord {
    TrialRecord {
        n: 10,
        k: 2,
        sigma: 4,
        trial_index: 0,
        seed: 0,
        outcome,
        solve_nodes: 0,
        certificate: None,
        wall_micros: 0,
    }
}

#[test]
fn timeouts_are_counted_not_averaged() {
    let recs: Vec<TrialRecord> = [Outcome::Colorable, Outcome::Colorable, Outcome::Uncolorable, Outcome::Timeout]
        .into_iter()
        .map(record)
        .collect();
    let est = PointEstimate::from_records(10, 2, 4, &recs);
    assert_eq!(est.timeouts, 1);
    assert_eq!(est.completed, 3);
    assert!((est.p_hat - 2.0 / 3.0).abs() < 1e-12);
    assert!((est.completion_rate - 0.75).abs() < 1e-12);
}

fn point(sigma: u64, p_hat: f64, se: f64) -> PointEstimate {
    PointEstimate {
        n: 50,
        k: 2,
        sigma,
        trials: 100,
        completed: 100,
        colorable: (p_hat * 100.0) as u64,
        timeouts: 0,
        completion_rate: 1.0,
        p_hat,
        std_error: se,
        ci_low: 0.0,
        ci_high: 1.0,
        half_width: 0.5,
    }
}

#[test]
fn crossing_is_interpolated() {
    let pts = vec![point(4, 0.1, 0.01), point(8, 0.3, 0.01), point(12, 0.7, 0.01)];
    let c = crossings(&pts);
    assert_eq!(c.len(), 1);
    assert!((c[0].sigma.unwrap() - 10.0).abs() < 1e-12);
    let flat = vec![point(4, 0.1, 0.01), point(8, 0.2, 0.01)];
    assert_eq!(crossings(&flat)[0].sigma, None);
}

#[test]
fn monotone_diagnostic_uses_two_standard_errors() {
    let noisy = vec![point(4, 0.50, 0.05), point(8, 0.40, 0.05)];
    assert!(monotone_violations(&noisy).is_empty());
    let real = vec![point(4, 0.50, 0.01), point(8, 0.40, 0.01)];
    assert_eq!(monotone_violations(&real).len(), 1);
}

#[test]
fn config_errors() {
    let bad = |json: &str| SweepConfig::from_json(json).unwrap_err();
    assert!(matches!(
        bad(r#"{"family":{"type":"cycle"},"n":[10],"k":2,"sigma":[],"trials":5}"#),
        HarnessError::Config(_)
    ));
    assert!(matches!(
        bad(r#"{"family":{"type":"cycle"},"n":[10],"k":2,"sigma":[4],"trials":5,"bogus":1}"#),
        HarnessError::Json(_)
    ));
    assert!(matches!(
        bad(r#"{"family":{"type":"cycle"},"n":[10],"k":5,"sigma":[4],"trials":5}"#),
        HarnessError::Config(_)
    ));
    assert!(matches!(
        bad(r#"{"family":{"type":"cycle"},"n":[10],"k":2,"sigma":["n/(1-1)"],"trials":5}"#),
        HarnessError::Json(_)
    ));
}

#[test]
fn scaling_expression_examples() {
    let e = |s: &str, n: f64| ScalingExpr::parse(s).unwrap().eval(n).unwrap();
    assert_eq!(e("2*n", 30.0), 60.0);
    assert_eq!(ScalingExpr::parse("floor: n^(1/4) * 3").unwrap().eval_positive(16).unwrap(), 6);
    assert!((e("log(n)", std::f64::consts::E.powi(2)) - 2.0).abs() < 1e-12);
    assert_eq!(e("2^3^2", 0.0), 512.0);
    assert_eq!(e("10 - 4 - 3", 0.0), 3.0);
    assert_eq!(e("-n^2", 3.0), -9.0);
    match ScalingExpr::parse("log(n - 5)").unwrap().eval(3.0) {
        Err(ExprError::LogDomain { offset, .. }) => assert_eq!(offset, 0),
        other => panic!("{other:?}"),
    }
    match ScalingExpr::parse("2 + ") {
        Err(ExprError::Syntax { offset, .. }) => assert_eq!(offset, 4),
        other => panic!("{other:?}"),
    }
}

proptest! {
    #[test]
    fn wilson_interval_contains_estimate(total in 1u64..5000, frac in 0.0f64..=1.0) {
        let s = ((total as f64) * frac).round() as u64;
        let (lo, hi) = wilson_interval(s, total, Z95);
        let p = s as f64 / total as f64;
        prop_assert!(0.0 <= lo && lo <= p + 1e-12 && p <= hi + 1e-12 && hi <= 1.0);
    }

    #[test]
    fn linear_expressions_evaluate(a in 1u32..50, b in 0u32..50, n in 3u32..10_000) {
        let e = ScalingExpr::parse(&format!("{a}*n + {b}")).unwrap();
        prop_assert_eq!(e.eval_positive(n as u64).unwrap(), a as u64 * n as u64 + b as u64);
    }
}
