//! Log-space evaluation of the expectation, probability and counting bounds
//! used to analyze random list assignments.

mod bounds;
mod logvalue;
mod regimes;

pub use bounds::{
    alternating_path_expectation, bad_triple_default_max, bad_triple_expectation_sum,
    bad_triple_probability_bound, blocked_vertex_expectation, chebyshev_lower_bound,
    expected_identical_cliques_bound, expected_identical_cliques_exact, pair_count_bound,
    pair_expectation_range, pair_expectation_sum, pair_probability_bound, pi_bound_clique_union,
    proper_triple_count_bound, tree_bad_expectation_bound, tree_free_lists, tree_order, BoundReport,
    Interpretation, MomentsError, Result, SERIES_TERM_LIMIT,
};
pub use logvalue::{
    binomial, binomial_exact, factorial, ln_binomial, ln_factorial, LogValue, LOG_SLACK,
};
pub use regimes::{
    evaluate_regime, girth_degree_exponent, girth_regime_bounds, girth_sigma_exponent, Regime,
    RegimeParams, RegimeReport,
};
