//! Finite-n evaluation of the σ-thresholds under which random list
//! assignments are colorable with high probability.
//!
//! A threshold of the form `σ = ω(T(n, Δ))` is reported as the value of `T`
//! and the ratio `σ / T`; `clears` only says the ratio exceeds one. Nothing
//! here claims an asymptotic statement.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::bounds::{
    alternating_path_expectation, blocked_vertex_expectation, pair_expectation_range, pair_expectation_sum,
    tree_bad_expectation_bound, tree_order, BoundReport, Interpretation, MomentsError, Result,
};
use super::logvalue::LogValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Constant `k`, small `Δ`: `σ ≫ n^{1/k²} Δ^{1/k}`.
    SmallLists,
    /// `Δ = O(n^{1/k^α})`: `σ ≫ n^{1/k^{(α+1)/2}} Δ^s`.
    PolynomialDegree,
    /// `Δ = Ω(n^{1/k})`: `σ ≫ n^{1/k} Δ`.
    LargeDegree,
    /// `k = 2`: `σ ≫ n^{1/4} Δ^{1/2}` below `Δ = √n`, `σ ≫ Δ` above.
    TwoLists,
    /// `k = 2`, girth `g`: `σ ≫ n^{1/(g+1)} Δ`.
    TwoListsGirth,
    /// `k ≥ 3`, girth `g ≥ 4`, small `Δ`: `σ ≫ n^{1/P} Δ^s`,
    /// `P = (k-1) Q(k+1, g) + 1`.
    GirthSmallLists,
    /// `k ≥ 3`, girth `g ≥ 4`: `σ ≫ n^{1/(Q(k, g) - 1)} Δ`.
    GirthTrees,
    /// `k = 2`, girth `C ln n`: `σ ≥ A Δ ln n` for `A > 4 e^{1/C}`.
    LogGirthTwoLists,
    /// Girth `C₂ ln ln n`, `k ≥ k₀`: `σ ≥ B Δ` for `B > B₀`.
    LogLogGirth,
    /// Slowly growing `k`: `σ ≥ (1+ε) n^{1/k²} Δ^{1/k} k`.
    GrowingLists,
    /// Slowly growing `k`, `Δ = O(n^{1/k^α})`: `σ ≥ (1+ε) n^{1/k^{(α+1)/2}} Δ^s k`.
    GrowingListsPolynomialDegree,
    /// `k = o(log n)`: `σ ≥ (1+ε) n^{1/k} Δ k`.
    GrowingLongLists,
}

impl Regime {
    pub const ALL: [Regime; 12] = [
        Regime::SmallLists,
        Regime::PolynomialDegree,
        Regime::LargeDegree,
        Regime::TwoLists,
        Regime::TwoListsGirth,
        Regime::GirthSmallLists,
        Regime::GirthTrees,
        Regime::LogGirthTwoLists,
        Regime::LogLogGirth,
        Regime::GrowingLists,
        Regime::GrowingListsPolynomialDegree,
        Regime::GrowingLongLists,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::SmallLists => "small-lists",
            Regime::PolynomialDegree => "polynomial-degree",
            Regime::LargeDegree => "large-degree",
            Regime::TwoLists => "two-lists",
            Regime::TwoListsGirth => "two-lists-girth",
            Regime::GirthSmallLists => "girth-small-lists",
            Regime::GirthTrees => "girth-trees",
            Regime::LogGirthTwoLists => "log-girth-two-lists",
            Regime::LogLogGirth => "loglog-girth",
            Regime::GrowingLists => "growing-lists",
            Regime::GrowingListsPolynomialDegree => "growing-lists-polynomial-degree",
            Regime::GrowingLongLists => "growing-long-lists",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = MomentsError;
    fn from_str(s: &str) -> Result<Regime> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| MomentsError::InvalidParameters(format!("unknown regime `{s}`")))
    }
}

/// Concrete parameters at which regimes are evaluated. Optional fields fall
/// back to the smallest admissible value for the regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeParams {
    pub n: u64,
    pub delta: u64,
    pub k: u64,
    pub sigma: u64,
    pub girth: Option<u64>,
    /// Exponent of `Δ` in the threshold.
    pub s: Option<f64>,
    /// Exponent in the degree cap `Δ = O(n^{1/k^α})`.
    pub alpha: Option<f64>,
    /// Multiplicative slack `(1+ε)` for growing-`k` thresholds.
    pub epsilon: Option<f64>,
}

impl RegimeParams {
    pub fn new(n: u64, delta: u64, k: u64, sigma: u64) -> Self {
        RegimeParams {
            n,
            delta,
            k,
            sigma,
            girth: None,
            s: None,
            alpha: None,
            epsilon: None,
        }
    }

    pub fn with_girth(mut self, g: u64) -> Self {
        self.girth = Some(g);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RegimeReport {
    pub regime: Regime,
    pub params: RegimeParams,
    /// Value of the σ-threshold expression.
    pub threshold: f64,
    pub sigma_ratio: f64,
    /// `σ` exceeds the threshold.
    pub clears: bool,
    /// Largest `Δ` the regime allows (evaluated cap), if any.
    pub delta_limit: Option<f64>,
    /// Smallest `Δ` the regime allows, if any.
    pub delta_floor: Option<f64>,
    /// The first-moment quantity the regime drives to zero.
    pub bound: BoundReport,
    pub extras: BTreeMap<String, f64>,
}

fn regime_err(regime: Regime, msg: impl fmt::Display) -> MomentsError {
    MomentsError::Regime(format!("{regime}: {msg}"))
}

/// `P(k) = (k-1) Q(k+1, g) + 1`, the exponent denominator for girth `g`.
pub fn girth_sigma_exponent(k: u64, g: u64) -> f64 {
    (k - 1) as f64 * tree_order(k + 1, g) + 1.0
}

/// `R(k) = k Q(k+1, g)²`, the degree-cap exponent denominator for girth `g`.
pub fn girth_degree_exponent(k: u64, g: u64) -> f64 {
    k as f64 * tree_order(k + 1, g).powi(2)
}

/// `prefactor · Σ_{m≥0} q^m`, divergent when `q ≥ 1`.
fn geometric_form(quantity: &str, p: &RegimeParams, prefactor: LogValue, q: LogValue) -> BoundReport {
    let ratio = q.value();
    let value = if ratio < 1.0 {
        prefactor / LogValue::from_f64(1.0 - ratio)
    } else {
        LogValue::from_ln(f64::INFINITY)
    };
    let mut params = BTreeMap::new();
    for (key, v) in [("n", p.n), ("delta", p.delta), ("k", p.k), ("sigma", p.sigma)] {
        params.insert(key.to_string(), v as f64);
    }
    let mut extras = BTreeMap::new();
    extras.insert("prefactor".to_string(), prefactor.value());
    extras.insert("ratio".to_string(), ratio);
    BoundReport {
        quantity: quantity.to_string(),
        params,
        value,
        interpretation: Interpretation::UpperBound,
        divergent: ratio >= 1.0,
        extras,
    }
}

fn need_girth(regime: Regime, p: &RegimeParams, min: u64) -> Result<u64> {
    match p.girth {
        Some(g) if g >= min => Ok(g),
        Some(g) => Err(regime_err(regime, format_args!("needs girth >= {min}, got {g}"))),
        None => Err(regime_err(regime, "needs a girth")),
    }
}

fn need_k(regime: Regime, k: u64, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(regime_err(regime, format_args!("needs {what}, got k={k}")))
    }
}

/// Evaluates one regime's threshold and first-moment bound.
pub fn evaluate_regime(regime: Regime, p: &RegimeParams) -> Result<RegimeReport> {
    if p.sigma < p.k || p.k == 0 {
        return Err(MomentsError::InvalidParameters(format!(
            "need 1 <= k <= sigma, got k={}, sigma={}",
            p.k, p.sigma
        )));
    }
    let (n, d, kf, sigma) = (p.n as f64, p.delta as f64, p.k as f64, p.sigma as f64);
    let k = p.k;
    let eps = p.epsilon.unwrap_or(0.0);
    if eps < 0.0 {
        return Err(regime_err(regime, "epsilon must be non-negative"));
    }
    let lvf = LogValue::from_f64;
    let mut extras = BTreeMap::new();
    let mut delta_limit = None;
    let mut delta_floor = None;
    let polynomial = |default_alpha: f64, alpha_ok: &dyn Fn(f64) -> bool, s_ok: &dyn Fn(f64) -> bool| {
        let alpha = p.alpha.unwrap_or(default_alpha);
        let s = p.s.unwrap_or(2.0 + 2.0 / (kf - 1.0));
        if !alpha_ok(alpha) {
            return Err(regime_err(regime, format_args!("alpha={alpha} out of range")));
        }
        if !s_ok(s) {
            return Err(regime_err(regime, format_args!("s={s} below the minimum")));
        }
        Ok((alpha, s))
    };
    let polynomial_bound = |alpha: f64| {
        let e = kf.powf((alpha + 1.0) / 2.0);
        let prefactor = lvf(n) * lvf(d).powf(kf * (kf + 1.0) - 1.0) / lvf(sigma).powf(kf * kf);
        let q = lvf(d).powf(e + kf) * lvf(kf).powf(kf) / lvf(sigma).powf(kf - 1.0);
        geometric_form("polynomial_degree_sum", p, prefactor, q)
    };
    let small_lists_bound = || {
        let prefactor = lvf(n) * lvf(d).powf(kf * (kf + 2.0)) / lvf(sigma).powf((kf - 1.0) * (kf + 2.0) + 1.0);
        let q = lvf(kf).powf(kf) * lvf(d).powf(kf * kf + 2.0 * kf) / lvf(sigma).powf(kf - 1.0);
        geometric_form("small_lists_sum", p, prefactor, q)
    };

    let (threshold, bound) = match regime {
        Regime::SmallLists => {
            need_k(regime, k, k >= 2, "k >= 2")?;
            delta_limit = Some(n.powf((kf - 1.0) / (kf * (kf.powi(3) + 2.0 * kf * kf - kf + 1.0))));
            let cliques = super::bounds::expected_identical_cliques_bound(p.n, p.delta, k, p.sigma)?;
            extras.insert("identical_cliques".into(), cliques.value());
            let paths = alternating_path_expectation(p.n, p.delta, k, p.sigma, k * k + k + 1, p.n.max(1))?;
            extras.insert("long_paths".into(), paths.value());
            (n.powf(1.0 / (kf * kf)) * d.powf(1.0 / kf), small_lists_bound())
        }
        Regime::PolynomialDegree => {
            need_k(regime, k, k >= 2, "k >= 2")?;
            let (alpha, s) = polynomial(1.0, &|a| (1.0..=3.0).contains(&a), &|s| s >= 2.0 + 2.0 / (kf - 1.0) - 1e-12)?;
            extras.insert("alpha".into(), alpha);
            extras.insert("s".into(), s);
            delta_limit = Some(n.powf(1.0 / kf.powf(alpha)));
            (n.powf(1.0 / kf.powf((alpha + 1.0) / 2.0)) * d.powf(s), polynomial_bound(alpha))
        }
        Regime::LargeDegree => {
            need_k(regime, k, k >= 2, "k >= 2")?;
            delta_floor = Some(n.powf(1.0 / kf));
            (n.powf(1.0 / kf) * d, blocked_vertex_expectation(p.n, p.delta, k, p.sigma)?)
        }
        Regime::TwoLists => {
            need_k(regime, k, k == 2, "k = 2")?;
            let low_degree = d * d < n;
            extras.insert("low_degree_case".into(), if low_degree { 1.0 } else { 0.0 });
            let t = if low_degree { n.powf(0.25) * d.sqrt() } else { d };
            if p.sigma < 3 {
                return Err(regime_err(regime, "needs sigma >= 3"));
            }
            (t, pair_expectation_sum(p.n, p.delta, p.sigma, p.n)?)
        }
        Regime::TwoListsGirth => {
            need_k(regime, k, k == 2, "k = 2")?;
            let g = need_girth(regime, p, 3)?;
            if p.sigma < 3 {
                return Err(regime_err(regime, "needs sigma >= 3"));
            }
            (
                n.powf(1.0 / (g as f64 + 1.0)) * d,
                pair_expectation_range(p.n, p.delta, p.sigma, g, p.n)?,
            )
        }
        Regime::GirthSmallLists => {
            need_k(regime, k, k >= 3, "k >= 3")?;
            let g = need_girth(regime, p, 4)?;
            let s = p.s.unwrap_or(1.0 + 1.0 / (kf - 1.0));
            if s < 1.0 + 1.0 / (kf - 1.0) - 1e-12 {
                return Err(regime_err(regime, format_args!("s={s} below 1 + 1/(k-1)")));
            }
            let big_p = girth_sigma_exponent(k, g);
            let q_next = tree_order(k + 1, g);
            extras.insert("s".into(), s);
            extras.insert("sigma_exponent".into(), big_p);
            extras.insert("degree_exponent".into(), girth_degree_exponent(k, g));
            delta_limit = Some(n.powf(1.0 / girth_degree_exponent(k, g)));
            let prefactor = lvf(n) * lvf(d).powf(kf * q_next) / lvf(sigma).powf(big_p);
            let q = lvf(kf).powf(kf) * lvf(d).powf((kf - 1.0) * q_next + kf + 1.0) / lvf(sigma).powf(kf - 1.0);
            (
                n.powf(1.0 / big_p) * d.powf(s),
                geometric_form("girth_small_lists_sum", p, prefactor, q),
            )
        }
        Regime::GirthTrees => {
            need_k(regime, k, k >= 3, "k >= 3")?;
            let g = need_girth(regime, p, 4)?;
            let q = tree_order(k, g);
            extras.insert("tree_order".into(), q);
            (n.powf(1.0 / (q - 1.0)) * d, tree_bad_expectation_bound(p.n, p.delta, k, p.sigma, g)?)
        }
        Regime::LogGirthTwoLists => {
            need_k(regime, k, k == 2, "k = 2")?;
            let g = need_girth(regime, p, 3)?;
            if p.n < 3 {
                return Err(regime_err(regime, "needs n >= 3"));
            }
            let c = g as f64 / n.ln();
            let a_min = 4.0 * (1.0 / c).exp();
            extras.insert("girth_constant".into(), c);
            extras.insert("min_constant".into(), a_min);
            (
                a_min * d * n.ln(),
                alternating_path_expectation(p.n, p.delta, 2, p.sigma, g, p.n)?,
            )
        }
        Regime::LogLogGirth => {
            let g = need_girth(regime, p, 3)?;
            if p.n < 16 {
                return Err(regime_err(regime, "needs n >= 16 so that ln ln n > 1"));
            }
            let c2 = g as f64 / n.ln().ln();
            let k0 = ((2.0 / c2).exp() + 1.0).ceil();
            let b0 = ((k0 - 2.0) / 2.0).exp() * k0 * k0;
            extras.insert("girth_constant".into(), c2);
            extras.insert("min_list_size".into(), k0);
            extras.insert("min_constant".into(), b0);
            need_k(regime, k, kf >= k0, &format!("k >= {k0}"))?;
            (b0 * d, tree_bad_expectation_bound(p.n, p.delta, k, p.sigma, g)?)
        }
        Regime::GrowingLists => {
            need_k(regime, k, k >= 2, "k >= 2")?;
            delta_limit = Some(n.powf(1.0 / (3.0 * kf.powi(3))));
            let base = (1.0 + eps) * n.powf(1.0 / (kf * kf)) * kf;
            if p.delta >= 2 {
                let c = kf / d.ln();
                extras.insert("list_to_log_degree".into(), c);
                extras.insert("threshold_proportional_case".into(), base * (1.0 / c).exp());
            }
            extras.insert("threshold_large_k_case".into(), base);
            (base * d.powf(1.0 / kf), small_lists_bound())
        }
        Regime::GrowingListsPolynomialDegree => {
            need_k(regime, k, k >= 2, "k >= 2")?;
            let (alpha, s) = polynomial(2.0, &|a| a > 1.0 && a <= 3.0, &|s| s > 2.0)?;
            extras.insert("alpha".into(), alpha);
            extras.insert("s".into(), s);
            delta_limit = Some(n.powf(1.0 / kf.powf(alpha)));
            (
                (1.0 + eps) * n.powf(1.0 / kf.powf((alpha + 1.0) / 2.0)) * d.powf(s) * kf,
                polynomial_bound(alpha),
            )
        }
        Regime::GrowingLongLists => {
            need_k(regime, k, k >= 2, "k >= 2")?;
            if p.n >= 3 {
                let c = kf / n.ln();
                extras.insert("list_to_log_n".into(), c);
                extras.insert("threshold_log_case".into(), (1.0 + eps) * c * (1.0 / c).exp() * d * n.ln());
            }
            (
                (1.0 + eps) * n.powf(1.0 / kf) * d * kf,
                blocked_vertex_expectation(p.n, p.delta, k, p.sigma)?,
            )
        }
    };
    let sigma_ratio = sigma / threshold;
    Ok(RegimeReport {
        regime,
        params: *p,
        threshold,
        sigma_ratio,
        clears: sigma_ratio > 1.0,
        delta_limit,
        delta_floor,
        bound,
        extras,
    })
}

/// Evaluates every regime whose structural requirements (list size,
/// girth, ...) the parameters meet; the rest are skipped.
pub fn girth_regime_bounds(p: &RegimeParams) -> Vec<RegimeReport> {
    Regime::ALL
        .into_iter()
        .filter_map(|r| evaluate_regime(r, p).ok())
        .collect()
}
