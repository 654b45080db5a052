//! Counting, probability and expectation bounds for random list assignments.
//!
//! Every value is computed in log-space; see [`LogValue`].

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::logvalue::{binomial, factorial, LogValue};

/// Most terms any series is summed over before the tail is estimated.
pub const SERIES_TERM_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MomentsError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parameters outside the regime: {0}")]
    Regime(String),
}

pub type Result<T> = std::result::Result<T, MomentsError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Interpretation {
    Expectation,
    UpperBound,
    LowerBound,
}

/// One evaluated quantity together with the inputs that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub quantity: String,
    pub params: BTreeMap<String, f64>,
    pub value: LogValue,
    pub interpretation: Interpretation,
    /// Set when the value is infinite or the underlying series does not
    /// converge over the summed range.
    pub divergent: bool,
    /// Auxiliary numbers (series ratios, tails, alternative forms).
    pub extras: BTreeMap<String, f64>,
}

impl BoundReport {
    fn new(quantity: &str, params: &[(&str, f64)], value: LogValue, interpretation: Interpretation) -> Self {
        BoundReport {
            quantity: quantity.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            value,
            interpretation,
            divergent: !value.is_finite(),
            extras: BTreeMap::new(),
        }
    }

    fn extra(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), value);
        self
    }

    /// `self.value` as a plain float.
    pub fn value(&self) -> f64 {
        self.value.value()
    }
}

impl Serialize for LogValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LogValue", 2)?;
        st.serialize_field("value", &self.value())?;
        st.serialize_field("ln", &self.ln())?;
        st.end()
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(MomentsError::InvalidParameters(msg()))
    }
}

fn require_lists(k: u64, sigma: u64) -> Result<()> {
    require(k >= 1 && k <= sigma, || format!("need 1 <= k <= sigma, got k={k}, sigma={sigma}"))
}

fn lv(x: u64) -> LogValue {
    LogValue::from_u64(x)
}

/// Result of summing a non-negative series.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Series {
    pub sum: LogValue,
    pub terms: u64,
    /// Ratio of the last two summed terms (NaN with fewer than two).
    pub last_ratio: f64,
    /// Geometric tail added past the term limit.
    pub tail: Option<LogValue>,
    pub truncated: bool,
}

impl Series {
    /// Divergent when the terms are not shrinking at the end of the range.
    pub fn divergent(&self) -> bool {
        !self.sum.is_finite() || self.last_ratio >= 1.0
    }
}

/// Sums `term(i)` for `lo..=hi`; beyond [`SERIES_TERM_LIMIT`] terms the rest
/// is replaced by a geometric tail using the last term ratio.
pub(crate) fn sum_series(lo: u64, hi: u64, term: impl Fn(u64) -> LogValue) -> Series {
    let mut out = Series {
        sum: LogValue::ZERO,
        terms: 0,
        last_ratio: f64::NAN,
        tail: None,
        truncated: false,
    };
    if lo > hi {
        return out;
    }
    let last = hi.min(lo.saturating_add(SERIES_TERM_LIMIT - 1));
    let mut prev: Option<LogValue> = None;
    let mut current = LogValue::ZERO;
    for i in lo..=last {
        current = term(i);
        out.sum = out.sum + current;
        if let Some(p) = prev {
            if !p.is_zero() {
                out.last_ratio = (current.ln() - p.ln()).exp();
            }
        }
        prev = Some(current);
    }
    out.terms = last - lo + 1;
    if last < hi {
        out.truncated = true;
        let r = out.last_ratio;
        if r < 1.0 {
            let remaining = (hi - last) as f64;
            // r + r^2 + ... + r^remaining
            let geo = r * (1.0 - r.powf(remaining)) / (1.0 - r);
            let tail = current * LogValue::from_f64(geo);
            out.sum = out.sum + tail;
            out.tail = Some(tail);
        }
    }
    out
}

/// Upper bound `n Δ^k C(σ,k)^{-k}` on the expected number of `(k+1)`-cliques
/// whose vertices all receive the same list.
pub fn expected_identical_cliques_bound(n: u64, delta: u64, k: u64, sigma: u64) -> Result<BoundReport> {
    require_lists(k, sigma)?;
    let value = lv(n) * lv(delta).powi(k) / binomial(sigma, k).powi(k);
    Ok(BoundReport::new(
        "identical_cliques_bound",
        &[("n", n as f64), ("delta", delta as f64), ("k", k as f64), ("sigma", sigma as f64)],
        value,
        Interpretation::UpperBound,
    ))
}

/// Exact expected number of identical-list `(k+1)`-cliques in the disjoint
/// union of `⌊n/(Δ+1)⌋` copies of `K_{Δ+1}`.
pub fn expected_identical_cliques_exact(n: u64, delta: u64, k: u64, sigma: u64) -> Result<BoundReport> {
    require_lists(k, sigma)?;
    let blocks = n / (delta + 1);
    let value = lv(blocks) * binomial(delta + 1, k + 1) / binomial(sigma, k).powi(k);
    Ok(BoundReport::new(
        "identical_cliques_exact",
        &[("n", n as f64), ("delta", delta as f64), ("k", k as f64), ("sigma", sigma as f64)],
        value,
        Interpretation::Expectation,
    )
    .extra("blocks", blocks as f64))
}

/// Upper bound on the expected number of paths on `r_min..=r_max` vertices
/// that are alternating for some coloring of all but their origin:
/// `Σ n Δ^{r-1} k^{2r} / σ^{r-1}`.
///
/// The series is geometric with ratio `Δk²/σ`; `divergent` is set when the
/// ratio is at least one. `extras.geometric_tail` is the closed form of the
/// sum from `r_max + 1` to infinity (infinite when divergent).
pub fn alternating_path_expectation(
    n: u64,
    delta: u64,
    k: u64,
    sigma: u64,
    r_min: u64,
    r_max: u64,
) -> Result<BoundReport> {
    require(sigma >= 1, || "sigma must be positive".into())?;
    require(r_min >= 1, || "paths have at least one vertex".into())?;
    let (n_lv, d_lv, k_lv, s_lv) = (lv(n), lv(delta), lv(k), lv(sigma));
    let term = |r: u64| n_lv * d_lv.powi(r - 1) * k_lv.powi(2 * r) / s_lv.powi(r - 1);
    let series = sum_series(r_min, r_max, term);
    let ratio = (delta * k * k) as f64 / sigma as f64;
    let tail = if ratio >= 1.0 {
        f64::INFINITY
    } else {
        let first = r_max.max(r_min.saturating_sub(1)) + 1;
        (term(first) / LogValue::from_f64(1.0 - ratio)).value()
    };
    let mut report = BoundReport::new(
        "alternating_path_expectation",
        &[
            ("n", n as f64),
            ("delta", delta as f64),
            ("k", k as f64),
            ("sigma", sigma as f64),
            ("r_min", r_min as f64),
            ("r_max", r_max as f64),
        ],
        series.sum,
        Interpretation::UpperBound,
    )
    .extra("ratio", ratio)
    .extra("geometric_tail", tail);
    report.divergent = ratio >= 1.0 || !series.sum.is_finite();
    Ok(report)
}

/// Upper bound `σ^{m-1} C(Δ,k) C(Δk,k-1)^{m-1} / C(σ,k)^m` on the probability
/// that a fixed proper triple on `m` vertices is bad. Can exceed one.
pub fn bad_triple_probability_bound(m: u64, delta: u64, k: u64, sigma: u64) -> Result<BoundReport> {
    require_lists(k, sigma)?;
    require(m >= 1, || "m must be positive".into())?;
    let value = bad_triple_probability(m, delta, k, sigma);
    Ok(BoundReport::new(
        "bad_triple_probability_bound",
        &[("m", m as f64), ("delta", delta as f64), ("k", k as f64), ("sigma", sigma as f64)],
        value,
        Interpretation::UpperBound,
    ))
}

fn bad_triple_probability(m: u64, delta: u64, k: u64, sigma: u64) -> LogValue {
    lv(sigma).powi(m - 1) * binomial(delta, k) * binomial(delta * k, k - 1).powi(m - 1)
        / binomial(sigma, k).powi(m)
}

/// Upper bound `n Δ^{m-1} (m-1)!` on the number of proper triples on `m`
/// vertices in a graph of maximum degree `Δ`.
pub fn proper_triple_count_bound(n: u64, delta: u64, m: u64) -> Result<BoundReport> {
    require(m >= 1, || "m must be positive".into())?;
    let value = lv(n) * lv(delta).powi(m - 1) * factorial(m - 1);
    Ok(BoundReport::new(
        "proper_triple_count_bound",
        &[("n", n as f64), ("delta", delta as f64), ("m", m as f64)],
        value,
        Interpretation::UpperBound,
    ))
}

/// Default upper end of the bad-triple sum: `Δ^{k²+k}` saturated to `u64`.
pub fn bad_triple_default_max(delta: u64, k: u64) -> u64 {
    let e = (k * k + k).min(u32::MAX as u64) as u32;
    delta.checked_pow(e).unwrap_or(u64::MAX)
}

/// `Σ_{m} n Δ^{2m-2} (m-1)! · p_m` where `p_m` is
/// [`bad_triple_probability_bound`]. `m_lo` defaults to `k + 2`, `m_hi` to
/// `Δ^{k²+k}`; past [`SERIES_TERM_LIMIT`] terms a geometric tail built from
/// the last term ratio is added (`extras.tail`, `extras.truncated`).
///
/// The term ratio grows with `m`, so `divergent` is set whenever the terms
/// have stopped shrinking by the end of the range.
pub fn bad_triple_expectation_sum(
    n: u64,
    delta: u64,
    k: u64,
    sigma: u64,
    m_lo: Option<u64>,
    m_hi: Option<u64>,
) -> Result<BoundReport> {
    require_lists(k, sigma)?;
    let lo = m_lo.unwrap_or(k + 2);
    let hi = m_hi.unwrap_or_else(|| bad_triple_default_max(delta, k));
    require(lo >= 1, || "m_lo must be positive".into())?;
    let n_lv = lv(n);
    let d_lv = lv(delta);
    let term = |m: u64| {
        n_lv * d_lv.powi(2 * m - 2) * factorial(m - 1) * bad_triple_probability(m, delta, k, sigma)
    };
    let series = sum_series(lo, hi, term);
    let mut report = BoundReport::new(
        "bad_triple_expectation_sum",
        &[
            ("n", n as f64),
            ("delta", delta as f64),
            ("k", k as f64),
            ("sigma", sigma as f64),
            ("m_lo", lo as f64),
            ("m_hi", hi as f64),
        ],
        series.sum,
        Interpretation::UpperBound,
    )
    .extra("terms", series.terms as f64)
    .extra("last_ratio", series.last_ratio)
    .extra("truncated", if series.truncated { 1.0 } else { 0.0 })
    .extra("tail", series.tail.map_or(0.0, LogValue::value));
    report.divergent = series.divergent();
    Ok(report)
}

/// `P[X > 0] ≥ 1 - (E + Π)/E²`, clamped to `[0, 1]`; zero when `E = 0`.
pub fn chebyshev_lower_bound(expectation: f64, pi: f64) -> Result<BoundReport> {
    require(expectation >= 0.0 && pi >= 0.0, || {
        format!("need E >= 0 and Pi >= 0, got E={expectation}, Pi={pi}")
    })?;
    let p = if expectation == 0.0 {
        0.0
    } else {
        (1.0 - (expectation + pi) / (expectation * expectation)).clamp(0.0, 1.0)
    };
    Ok(BoundReport::new(
        "chebyshev_lower_bound",
        &[("expectation", expectation), ("pi", pi)],
        LogValue::from_f64(p),
        Interpretation::LowerBound,
    ))
}

/// Covariance term for identical-list cliques in the disjoint clique union:
/// `⌊n/(Δ+1)⌋ Σ_{l=1}^{k} C(Δ+1, k+1+l) C(σ,k)^{-(k+l)}`.
///
/// Each summand counts a `(k+1+l)`-set once. `extras.exact_pi` additionally
/// weights it by the number of ordered clique pairs with that union,
/// `C(k+1+l, k+1) C(k+1, l)`, giving the exact sum of `P[A ∩ B]` over
/// ordered dependent pairs.
pub fn pi_bound_clique_union(n: u64, delta: u64, k: u64, sigma: u64) -> Result<BoundReport> {
    require_lists(k, sigma)?;
    let blocks = lv(n / (delta + 1));
    let per_list = binomial(sigma, k);
    let mut value = LogValue::ZERO;
    let mut exact = LogValue::ZERO;
    for l in 1..=k {
        let term = binomial(delta + 1, k + 1 + l) / per_list.powi(k + l);
        value = value + term;
        exact = exact + term * binomial(k + 1 + l, k + 1) * binomial(k + 1, l);
    }
    Ok(BoundReport::new(
        "pi_bound_clique_union",
        &[("n", n as f64), ("delta", delta as f64), ("k", k as f64), ("sigma", sigma as f64)],
        blocks * value,
        Interpretation::UpperBound,
    )
    .extra("exact_pi", (blocks * exact).value()))
}

/// Upper bound `2^{l+2r} / (σ^{l-1} (σ-1)^{2+r})` on the probability that a
/// fixed proper pair on `l` vertices with `r` non-consecutive common
/// vertices is 2-bad.
pub fn pair_probability_bound(l: u64, r: u64, sigma: u64) -> Result<BoundReport> {
    require(l >= 3, || format!("pairs have at least 3 vertices, got l={l}"))?;
    require(r <= l, || format!("need r <= l, got r={r}, l={l}"))?;
    require(sigma >= 3, || format!("need sigma >= 3, got {sigma}"))?;
    Ok(BoundReport::new(
        "pair_probability_bound",
        &[("l", l as f64), ("r", r as f64), ("sigma", sigma as f64)],
        pair_probability(l, r, sigma),
        Interpretation::UpperBound,
    ))
}

fn pair_probability(l: u64, r: u64, sigma: u64) -> LogValue {
    lv(2).powi(l + 2 * r) / (lv(sigma).powi(l - 1) * lv(sigma - 1).powi(2 + r))
}

/// Upper bound `n Δ^{l-1+r} 2^l` on the number of proper pairs.
pub fn pair_count_bound(n: u64, delta: u64, l: u64, r: u64) -> Result<BoundReport> {
    require(l >= 3, || format!("pairs have at least 3 vertices, got l={l}"))?;
    Ok(BoundReport::new(
        "pair_count_bound",
        &[("n", n as f64), ("delta", delta as f64), ("l", l as f64), ("r", r as f64)],
        lv(n) * lv(delta).powi(l - 1 + r) * lv(2).powi(l),
        Interpretation::UpperBound,
    ))
}

/// `Σ_{l=3}^{l_max} Σ_{r=0}^{l}` of count bound times probability bound.
/// `divergent` when `σ ≤ 4Δ`.
pub fn pair_expectation_sum(n: u64, delta: u64, sigma: u64, l_max: u64) -> Result<BoundReport> {
    pair_expectation_range(n, delta, sigma, 3, l_max)
}

/// [`pair_expectation_sum`] restricted to `l >= l_min`.
pub fn pair_expectation_range(n: u64, delta: u64, sigma: u64, l_min: u64, l_max: u64) -> Result<BoundReport> {
    require(sigma >= 3, || format!("need sigma >= 3, got {sigma}"))?;
    let lo = l_min.max(3);
    let (n_lv, d_lv) = (lv(n), lv(delta));
    // Inner sum over r is geometric with ratio x = 4Δ/(σ-1).
    let x = 4.0 * delta as f64 / (sigma - 1) as f64;
    let inner = |l: u64| -> LogValue {
        let terms = (l + 1) as f64;
        if delta == 0 {
            LogValue::ONE
        } else if (x - 1.0).abs() < 1e-15 {
            LogValue::from_f64(terms)
        } else if x < 1.0 {
            LogValue::from_f64((1.0 - x.powf(terms)) / (1.0 - x))
        } else {
            let lx = x.ln();
            LogValue::from_ln(terms * lx + (-(-terms * lx).exp()).ln_1p() - (x - 1.0).ln())
        }
    };
    let term = |l: u64| n_lv * d_lv.powi(l - 1) * lv(2).powi(l) * pair_probability(l, 0, sigma) * inner(l);
    let series = sum_series(lo, l_max, term);
    let mut report = BoundReport::new(
        "pair_expectation_sum",
        &[
            ("n", n as f64),
            ("delta", delta as f64),
            ("sigma", sigma as f64),
            ("l_min", lo as f64),
            ("l_max", l_max as f64),
        ],
        series.sum,
        Interpretation::UpperBound,
    )
    .extra("ratio", 4.0 * delta as f64 / sigma as f64);
    report.divergent = sigma <= 4 * delta || !series.sum.is_finite();
    Ok(report)
}

/// Vertex count of a rooted `k`-proper tree for girth `g`, as a float so
/// that very large girths do not overflow.
pub fn tree_order(k: u64, g: u64) -> f64 {
    let k1 = (k - 1) as f64;
    let geometric = |terms: u64| -> f64 {
        if k == 2 {
            terms as f64
        } else {
            (k1.powf(terms as f64) - 1.0) / (k1 - 1.0)
        }
    };
    if g % 2 == 1 {
        1.0 + k as f64 * geometric((g - 1) / 2)
    } else {
        2.0 * geometric(g / 2)
    }
}

/// Number of tree vertices whose list is not pinned down by the coloring in
/// the tree-bad conditions.
pub fn tree_free_lists(k: u64, g: u64) -> f64 {
    let k1 = (k - 1) as f64;
    if g % 2 == 1 {
        k as f64 * k1.powf(((g - 3) / 2) as f64)
    } else if g == 4 {
        // Only the root's list is constrained.
        (2 * k - 1) as f64
    } else {
        2.0 * k1.powf(((g - 2) / 2) as f64)
    }
}

/// Expected number of tree-bad rooted `k`-proper trees:
/// `n Δ^{Q-1} σ^{Q-1} C(σ-1,k-1)^{F} / C(σ,k)^Q` with `Q` the tree order and
/// `F` the free lists. `extras.simplified` is `n Δ^{Q-1} k^{2Q} / σ^{Q-1}`,
/// which dominates the exact form except at girth 4.
pub fn tree_bad_expectation_bound(n: u64, delta: u64, k: u64, sigma: u64, g: u64) -> Result<BoundReport> {
    require(k >= 2, || format!("need k >= 2, got {k}"))?;
    require_lists(k, sigma)?;
    require(g >= 3, || format!("girth must be at least 3, got {g}"))?;
    let q = tree_order(k, g);
    let free = tree_free_lists(k, g);
    let base = LogValue::from_u64(n) * lv(delta).powf(q - 1.0);
    let exact = base * lv(sigma).powf(q - 1.0) * binomial(sigma - 1, k - 1).powf(free)
        / binomial(sigma, k).powf(q);
    let simplified = base * lv(k).powf(2.0 * q) / lv(sigma).powf(q - 1.0);
    Ok(BoundReport::new(
        "tree_bad_expectation_bound",
        &[
            ("n", n as f64),
            ("delta", delta as f64),
            ("k", k as f64),
            ("sigma", sigma as f64),
            ("g", g as f64),
        ],
        exact,
        Interpretation::UpperBound,
    )
    .extra("tree_order", q)
    .extra("free_lists", free)
    .extra("simplified", simplified.value())
    .extra("simplified_ln", simplified.ln()))
}

/// Expected number of vertices whose `k` neighbors can block its whole list:
/// `n C(Δ,k) C(σ,k) k! C(σ-1,k-1)^k / C(σ,k)^{k+1}`.
pub fn blocked_vertex_expectation(n: u64, delta: u64, k: u64, sigma: u64) -> Result<BoundReport> {
    require_lists(k, sigma)?;
    let value = lv(n) * binomial(delta, k) * factorial(k) * binomial(sigma - 1, k - 1).powi(k)
        / binomial(sigma, k).powi(k);
    Ok(BoundReport::new(
        "blocked_vertex_expectation",
        &[("n", n as f64), ("delta", delta as f64), ("k", k as f64), ("sigma", sigma as f64)],
        value,
        Interpretation::UpperBound,
    ))
}
