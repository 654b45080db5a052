//! Evaluates the moment bounds and regime thresholds in log space.
//!
//! cargo run --example analytic_bounds

use listcolor::moments::{
    self, evaluate_regime, girth_regime_bounds, tree_order, Regime, RegimeParams,
};

fn main() -> Result<(), moments::MomentsError> {
    let e = moments::expected_identical_cliques_exact(60, 4, 2, 6)?;
    println!("identical K3 lists, clique_union(60,4), k=2, sigma=6: {:.5}", e.value());

    // 225 blocks of K5 put the expectation near 10.
    let e10 = moments::expected_identical_cliques_exact(1125, 4, 2, 6)?;
    let pi = moments::pi_bound_clique_union(1125, 4, 2, 6)?;
    let lb = moments::chebyshev_lower_bound(e10.value(), pi.value())?;
    println!("E = {:.3}, Pi = {:.3}, P[X > 0] >= {:.4}", e10.value(), pi.value(), lb.value());

    let s = moments::bad_triple_expectation_sum(10_000, 3, 2, 200, None, None)?;
    println!("bad triple sum: {:.3e} (divergent: {})", s.value(), s.divergent);

    let pairs = moments::pair_expectation_sum(10_000, 3, 60, 200)?;
    println!("2-bad pair sum: {:.3e}", pairs.value());

    for (k, g) in [(3, 4), (3, 5), (4, 6)] {
        println!("tree order k={k} g={g}: {}", tree_order(k, g));
    }
    let t = moments::tree_bad_expectation_bound(100_000, 3, 3, 40, 5)?;
    println!("tree-bad expectation: {:.3e} (simplified {:.3e})", t.value(), t.extras["simplified"]);

    let p = RegimeParams::new(1_000_000, 3, 2, 200);
    let r = evaluate_regime(Regime::SmallLists, &p)?;
    println!("{}: threshold {:.2}, sigma/threshold {:.2}", r.regime, r.threshold, r.sigma_ratio);

    let pg = RegimeParams::new(1_000_000, 3, 3, 500).with_girth(6);
    for r in girth_regime_bounds(&pg) {
        println!("{:<34} threshold {:>12.3} clears {}", r.regime.to_string(), r.threshold, r.clears);
    }
    Ok(())
}
