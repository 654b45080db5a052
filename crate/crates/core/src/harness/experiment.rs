//! Monte Carlo estimation of the colorability probability at one point.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificates::{find_2bad_pair, find_bad_triple, find_tree_bad};
use crate::graph::{self, Graph};
use crate::lists::{sample_assignment, ListAssignment, SeedSpec};
use crate::solver::{extract_critical, solve_with_budget, Budget};

use super::expr::ScalingExpr;
use super::HarnessError;

/// Two-sided 95% standard normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Default per-trial solver budget.
pub const DEFAULT_TRIAL_BUDGET: Duration = Duration::from_secs(5);

/// Graph families a sweep can be run on. Parameters may depend on `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Family {
    /// `⌊n/(Δ+1)⌋` disjoint copies of `K_{Δ+1}`.
    CliqueUnion { delta: ScalingExpr },
    /// `r`-th power of the cycle `C_n`.
    PowerCycle { r: ScalingExpr },
    /// `K_{n,n}`.
    CompleteBipartite,
    /// `parts` parts of `n` vertices each.
    CompleteMultipartite { parts: ScalingExpr },
    Cycle,
    Complete,
    /// The Petersen graph; `n` is ignored.
    Petersen,
}

impl Family {
    pub fn build(&self, n: u64) -> Result<Graph, HarnessError> {
        let nu = n as usize;
        let g = match self {
            Family::CliqueUnion { delta } => graph::clique_union(nu, delta.eval_positive(n)? as usize)?,
            Family::PowerCycle { r } => graph::power_cycle(nu, r.eval_positive(n)? as usize)?,
            Family::CompleteBipartite => graph::complete_bipartite(nu, nu),
            Family::CompleteMultipartite { parts } => {
                graph::complete_multipartite(&vec![nu; parts.eval_positive(n)? as usize])?
            }
            Family::Cycle => graph::cycle(nu)?,
            Family::Complete => graph::complete(nu),
            Family::Petersen => graph::petersen(),
        };
        Ok(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Detector {
    /// Critical subgraph extraction.
    Critical,
    BadTriple,
    TwoBadPair,
    TreeBad,
}

impl Detector {
    pub fn name(self) -> &'static str {
        match self {
            Detector::Critical => "critical",
            Detector::BadTriple => "bad_triple",
            Detector::TwoBadPair => "two_bad_pair",
            Detector::TreeBad => "tree_bad",
        }
    }

    /// Whether the detector produced a certificate for an uncolorable
    /// instance. Guard overruns count as not found.
    fn finds(self, g: &Graph, lists: &ListAssignment) -> bool {
        match self {
            Detector::Critical => extract_critical(g, lists).is_ok(),
            Detector::BadTriple => matches!(find_bad_triple(g, lists), Ok(Some(_))),
            Detector::TwoBadPair => lists.k() == 2 && matches!(find_2bad_pair(g, lists), Ok(Some(_))),
            Detector::TreeBad => matches!(find_tree_bad(g, lists), Ok(Some(_))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Colorable,
    Uncolorable,
    Timeout,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Colorable => "COLORABLE",
            Outcome::Uncolorable => "UNCOLORABLE",
            Outcome::Timeout => "TIMEOUT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub n: u64,
    pub k: u64,
    pub sigma: u64,
    pub trial_index: u64,
    /// Seed the lists were drawn from.
    pub seed: u64,
    pub outcome: Outcome,
    pub solve_nodes: u64,
    /// First configured detector that certified an uncolorable instance.
    pub certificate: Option<&'static str>,
    pub wall_micros: u64,
}

/// Options for [`run_point`].
#[derive(Debug, Clone)]
pub struct PointOptions {
    pub trial_budget: Duration,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub detectors: Vec<Detector>,
}

impl Default for PointOptions {
    fn default() -> Self {
        PointOptions {
            trial_budget: DEFAULT_TRIAL_BUDGET,
            workers: None,
            detectors: Vec::new(),
        }
    }
}

/// Aggregate over the trials of one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointEstimate {
    pub n: u64,
    pub k: u64,
    pub sigma: u64,
    pub trials: u64,
    pub completed: u64,
    pub colorable: u64,
    pub timeouts: u64,
    pub completion_rate: f64,
    /// Colorable fraction of completed trials.
    pub p_hat: f64,
    pub std_error: f64,
    /// Wilson 95% score interval.
    pub ci_low: f64,
    pub ci_high: f64,
    pub half_width: f64,
}

/// Wilson score interval `(low, high)` for `successes` out of `total`.
pub fn wilson_interval(successes: u64, total: u64, z: f64) -> (f64, f64) {
    if total == 0 {
        return (0.0, 1.0);
    }
    let m = total as f64;
    let p = successes as f64 / m;
    let z2 = z * z;
    let denom = 1.0 + z2 / m;
    let centre = (p + z2 / (2.0 * m)) / denom;
    let half = z * (p * (1.0 - p) / m + z2 / (4.0 * m * m)).sqrt() / denom;
    let low = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let high = if successes == total { 1.0 } else { (centre + half).min(1.0) };
    (low, high)
}

impl PointEstimate {
    pub fn from_records(n: u64, k: u64, sigma: u64, records: &[TrialRecord]) -> Self {
        let trials = records.len() as u64;
        let timeouts = records.iter().filter(|r| r.outcome == Outcome::Timeout).count() as u64;
        let colorable = records.iter().filter(|r| r.outcome == Outcome::Colorable).count() as u64;
        let completed = trials - timeouts;
        let p_hat = if completed == 0 { f64::NAN } else { colorable as f64 / completed as f64 };
        let std_error = if completed == 0 {
            f64::NAN
        } else {
            (p_hat * (1.0 - p_hat) / completed as f64).sqrt()
        };
        let (ci_low, ci_high) = wilson_interval(colorable, completed, Z95);
        PointEstimate {
            n,
            k,
            sigma,
            trials,
            completed,
            colorable,
            timeouts,
            completion_rate: if trials == 0 { 0.0 } else { completed as f64 / trials as f64 },
            p_hat,
            std_error,
            ci_low,
            ci_high,
            half_width: (ci_high - ci_low) / 2.0,
        }
    }
}

fn run_trial(g: &Graph, n: u64, k: u64, sigma: u64, seed: SeedSpec, opts: &PointOptions) -> Result<TrialRecord, HarnessError> {
    let start = Instant::now();
    let lists = sample_assignment(g, k as u32, sigma as u32, seed)?;
    let budget = Budget {
        max_nodes: None,
        deadline: Some(start + opts.trial_budget),
    };
    let (outcome, nodes) = match solve_with_budget(g, &lists, budget) {
        Ok(res) if res.is_colorable() => (Outcome::Colorable, res.stats.nodes),
        Ok(res) => (Outcome::Uncolorable, res.stats.nodes),
        Err(e) => (Outcome::Timeout, e.stats.nodes),
    };
    let certificate = if outcome == Outcome::Uncolorable {
        opts.detectors.iter().find(|d| d.finds(g, &lists)).map(|d| d.name())
    } else {
        None
    };
    Ok(TrialRecord {
        n,
        k,
        sigma,
        trial_index: seed.trial_index,
        seed: seed.derived_seed(),
        outcome,
        solve_nodes: nodes,
        certificate,
        wall_micros: start.elapsed().as_micros() as u64,
    })
}

/// Runs `trials` independent list assignments on `g`; trial `i` uses
/// `SeedSpec::new(base_seed, i)`. Records come back in trial order whatever
/// the scheduling.
pub fn run_point(
    g: &Graph,
    n: u64,
    k: u64,
    sigma: u64,
    trials: u64,
    base_seed: u64,
    opts: &PointOptions,
) -> Result<(PointEstimate, Vec<TrialRecord>), HarnessError> {
    if trials == 0 {
        return Err(HarnessError::Config("trials must be positive".into()));
    }
    if k == 0 || k > sigma {
        return Err(HarnessError::Config(format!("need 1 <= k <= sigma, got k={k}, sigma={sigma}")));
    }
    let work = || -> Result<Vec<TrialRecord>, HarnessError> {
        (0..trials)
            .into_par_iter()
            .map(|i| run_trial(g, n, k, sigma, SeedSpec::new(base_seed, i), opts))
            .collect()
    };
    let records = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    Ok((PointEstimate::from_records(n, k, sigma, &records), records))
}
