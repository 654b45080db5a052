//! Monte Carlo experiments, threshold sweeps and corpus-wide lemma checks.

mod experiment;
mod expr;
mod lemmas;
mod sweep;

use thiserror::Error;

pub use experiment::{
    run_point, wilson_interval, Detector, Family, Outcome, PointEstimate, PointOptions, TrialRecord,
    DEFAULT_TRIAL_BUDGET, Z95,
};
pub use expr::{parse_scaling, ExprError, Rounding, ScalingExpr};
pub use lemmas::{check_uncolorable, verify_lemmas, CorpusSpec, Counterexample, InstanceFilter, LemmaReport};
pub use sweep::{
    crossings, monotone_violations, point_seed, records_csv, summary_json, sweep, write_outputs, Crossing,
    MonotoneViolation, SweepConfig, SweepResult, RECORDS_FORMAT,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Lists(#[from] crate::lists::ListError),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
