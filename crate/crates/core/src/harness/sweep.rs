//! Threshold sweeps over an `(n, σ)` grid, with CSV and JSON output.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::lists::splitmix64;

use super::experiment::{run_point, Detector, Family, PointEstimate, PointOptions, TrialRecord};
use super::expr::ScalingExpr;
use super::HarnessError;

/// Version tag written in the first line of `records.csv`.
pub const RECORDS_FORMAT: &str = "listcolor-records v1";

fn default_budget_ms() -> u64 {
    5000
}

/// A sweep description; see `docs/sweep-config.md`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub family: Family,
    /// Values of `n`.
    pub n: Vec<u64>,
    /// List size as a function of `n`.
    pub k: ScalingExpr,
    /// Universe sizes, each a function of `n`. Duplicates after rounding
    /// are merged.
    pub sigma: Vec<ScalingExpr>,
    pub trials: u64,
    #[serde(default)]
    pub base_seed: u64,
    /// Certificate searches run on uncolorable trials, in order.
    #[serde(default)]
    pub detectors: Vec<Detector>,
    #[serde(default = "default_budget_ms")]
    pub trial_budget_ms: u64,
    #[serde(default)]
    pub workers: Option<usize>,
    /// Adds a `wall_micros` column to `records.csv`; the file is then no
    /// longer reproducible byte for byte.
    #[serde(default)]
    pub record_timing: bool,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let cfg: SweepConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n.is_empty() {
            return Err(HarnessError::Config("n grid is empty".into()));
        }
        if self.sigma.is_empty() {
            return Err(HarnessError::Config("sigma grid is empty".into()));
        }
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be positive".into()));
        }
        if let Some(&n) = self.n.iter().find(|&&n| n < 3) {
            return Err(HarnessError::Config(format!("n must be at least 3, got {n}")));
        }
        for (n, k, sigmas) in self.grid()? {
            if let Some(&s) = sigmas.iter().find(|&&s| s < k) {
                return Err(HarnessError::Config(format!("k({n}) = {k} exceeds sigma = {s}")));
            }
        }
        Ok(())
    }

    /// `(n, k(n), sorted distinct σ(n))` for every `n`, in grid order.
    pub fn grid(&self) -> Result<Vec<(u64, u64, Vec<u64>)>, HarnessError> {
        self.n
            .iter()
            .map(|&n| {
                let k = self.k.eval_positive(n)?;
                let sigmas: BTreeSet<u64> = self
                    .sigma
                    .iter()
                    .map(|s| s.eval_positive(n))
                    .collect::<Result<_, _>>()?;
                Ok((n, k, sigmas.into_iter().collect()))
            })
            .collect()
    }
}

/// Base seed of the point `(n, σ)`; trials within it are indexed from 0.
pub fn point_seed(base_seed: u64, n: u64, sigma: u64) -> u64 {
    splitmix64(base_seed ^ splitmix64(n ^ splitmix64(sigma.rotate_left(32))))
}

/// Where `p̂` first passes 1/2 along the σ grid at one `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub n: u64,
    /// Linear interpolation between the bracketing grid points; `None` when
    /// the grid does not bracket 1/2.
    pub sigma: Option<f64>,
    pub note: String,
}

/// A drop of `p̂` between consecutive σ values larger than twice the
/// combined standard error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneViolation {
    pub n: u64,
    pub sigma_lo: u64,
    pub sigma_hi: u64,
    pub drop: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub points: Vec<PointEstimate>,
    pub crossings: Vec<Crossing>,
    pub violations: Vec<MonotoneViolation>,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl SweepResult {
    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs one point per grid cell. Records are sorted by `(n, σ, trial)`.
pub fn sweep(config: &SweepConfig) -> Result<SweepResult, HarnessError> {
    config.validate()?;
    let opts = PointOptions {
        trial_budget: Duration::from_millis(config.trial_budget_ms),
        workers: config.workers,
        detectors: config.detectors.clone(),
    };
    let mut points = Vec::new();
    let mut records = Vec::new();
    for (n, k, sigmas) in config.grid()? {
        let g = config.family.build(n)?;
        for sigma in sigmas {
            let seed = point_seed(config.base_seed, n, sigma);
            let (est, recs) = run_point(&g, n, k, sigma, config.trials, seed, &opts)?;
            points.push(est);
            records.extend(recs);
        }
    }
    records.sort_by_key(|r| (r.n, r.sigma, r.trial_index));
    points.sort_by_key(|p| (p.n, p.sigma));
    let crossings = crossings(&points);
    let violations = monotone_violations(&points);
    Ok(SweepResult {
        points,
        crossings,
        violations,
        records,
    })
}

fn by_n(points: &[PointEstimate]) -> Vec<&[PointEstimate]> {
    points.chunk_by(|a, b| a.n == b.n).collect()
}

/// Crossings of `p̂ = 1/2`, one per `n`; points must be sorted by `(n, σ)`.
pub fn crossings(points: &[PointEstimate]) -> Vec<Crossing> {
    by_n(points)
        .into_iter()
        .map(|run| {
            let n = run[0].n;
            if run[0].p_hat >= 0.5 {
                return Crossing {
                    n,
                    sigma: None,
                    note: "p_hat >= 1/2 already at the smallest sigma".into(),
                };
            }
            for w in run.windows(2) {
                let (a, b) = (&w[0], &w[1]);
                if a.p_hat < 0.5 && b.p_hat >= 0.5 {
                    let t = (0.5 - a.p_hat) / (b.p_hat - a.p_hat);
                    let sigma = a.sigma as f64 + t * (b.sigma - a.sigma) as f64;
                    return Crossing {
                        n,
                        sigma: Some(sigma),
                        note: format!("interpolated between sigma={} and sigma={}", a.sigma, b.sigma),
                    };
                }
            }
            Crossing {
                n,
                sigma: None,
                note: "p_hat stays below 1/2 on the grid".into(),
            }
        })
        .collect()
}

/// Consecutive drops in `p̂` exceeding `2·sqrt(se₁² + se₂²)`.
pub fn monotone_violations(points: &[PointEstimate]) -> Vec<MonotoneViolation> {
    let mut out = Vec::new();
    for run in by_n(points) {
        for w in run.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.p_hat.is_nan() || b.p_hat.is_nan() {
                continue;
            }
            let tolerance = 2.0 * (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
            let drop = a.p_hat - b.p_hat;
            if drop > tolerance {
                out.push(MonotoneViolation {
                    n: a.n,
                    sigma_lo: a.sigma,
                    sigma_hi: b.sigma,
                    drop,
                    tolerance,
                });
            }
        }
    }
    out
}

/// `records.csv` contents: a version comment, a header, then one row per
/// trial in the given order.
pub fn records_csv(records: &[TrialRecord], timing: bool) -> String {
    let mut out = format!("# {RECORDS_FORMAT}\n");
    out.push_str("n,k,sigma,trial_index,seed,outcome,solve_nodes,certificate");
    if timing {
        out.push_str(",wall_micros");
    }
    out.push('\n');
    for r in records {
        write!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n,
            r.k,
            r.sigma,
            r.trial_index,
            r.seed,
            r.outcome.as_str(),
            r.solve_nodes,
            r.certificate.unwrap_or("")
        )
        .expect("writing to a String");
        if timing {
            write!(out, ",{}", r.wall_micros).expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

/// `summary.json` contents.
pub fn summary_json(config: &SweepConfig, result: &SweepResult) -> String {
    let doc = serde_json::json!({
        "format": RECORDS_FORMAT,
        "config": config,
        "points": result.points,
        "crossings": result.crossings,
        "crossing_note": "sigma where p_hat passes 1/2 at this n; a finite-size proxy for a threshold",
        "monotone": result.is_monotone(),
        "violations": result.violations,
    });
    serde_json::to_string_pretty(&doc).expect("summary serializes")
}

/// Writes `records.csv` and `summary.json` into `dir`, creating it.
pub fn write_outputs(dir: &Path, config: &SweepConfig, result: &SweepResult) -> Result<(), HarnessError> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("records.csv"), records_csv(&result.records, config.record_timing))?;
    std::fs::write(dir.join("summary.json"), summary_json(config, result) + "\n")?;
    Ok(())
}
