use listcolor::graph;
use listcolor::lists::{sample_assignment, SeedSpec};
use listcolor::moments::{
    binomial_exact, blocked_vertex_expectation, chebyshev_lower_bound, expected_identical_cliques_bound,
    expected_identical_cliques_exact, pair_expectation_range, pair_probability_bound, pi_bound_clique_union,
    tree_bad_expectation_bound, tree_free_lists, tree_order, bad_triple_probability_bound,
};
use proptest::prelude::*;

fn choose(n: u64, k: u64) -> f64 {
    binomial_exact(n, k).unwrap() as f64
}

/// Exact `Σ P[A ∩ B]` over ordered pairs of distinct, intersecting
/// `(k+1)`-cliques of one block, by listing the subsets.
fn dependent_pairs_by_listing(delta: u64, k: u64, sigma: u64) -> f64 {
    let size = delta as u32 + 1;
    let cliques: Vec<u32> = (0u32..1 << size).filter(|m| m.count_ones() as u64 == k + 1).collect();
    let per_list = choose(sigma, k);
    let mut total = 0.0;
    for &a in &cliques {
        for &b in &cliques {
            if a != b && a & b != 0 {
                // All lists on the union must coincide.
                let union = (a | b).count_ones() as i32;
                total += per_list.powi(-(union - 1));
            }
        }
    }
    total
}

#[test]
fn exact_pi_matches_listing() {
    for delta in 2..=5u64 {
        for k in 1..delta {
            for sigma in [k + 1, k + 3, 2 * k + 5] {
                let blocks = (40 / (delta + 1)) as f64;
                let r = pi_bound_clique_union(40, delta, k, sigma).unwrap();
                let want = blocks * dependent_pairs_by_listing(delta, k, sigma);
                let got = r.extras["exact_pi"];
                assert!((got - want).abs() <= 1e-9 * want.max(1e-300), "Δ={delta} k={k} σ={sigma}: {got} vs {want}");
                // Each union is counted once in the bound's own sum.
                assert!(r.value() <= got + 1e-12);
            }
        }
    }
}

#[test]
fn identical_cliques_closed_form() {
    for (n, delta, k, sigma) in [(60, 4, 2, 6), (100, 3, 3, 4), (35, 6, 2, 9)] {
        let blocks = (n / (delta + 1)) as f64;
        let want = blocks * choose(delta + 1, k + 1) / choose(sigma, k).powi(k as i32);
        let got = expected_identical_cliques_exact(n, delta, k, sigma).unwrap().value();
        assert!((got - want).abs() < 1e-9 * want);
    }
}

#[test]
fn identical_cliques_monte_carlo() {
    // clique_union(30, 4), k=2, σ=5: six K5 blocks, ten triangles each.
    let g = graph::clique_union(30, 4).unwrap();
    let trials = 20_000u64;
    let mut counts = Vec::with_capacity(trials as usize);
    for t in 0..trials {
        let l = sample_assignment(&g, 2, 5, SeedSpec::new(99, t)).unwrap();
        let mut c = 0u32;
        for block in 0..6 {
            let b = 5 * block;
            for x in b..b + 5 {
                for y in x + 1..b + 5 {
                    for z in y + 1..b + 5 {
                        if l.list(x) == l.list(y) && l.list(y) == l.list(z) {
                            c += 1;
                        }
                    }
                }
            }
        }
        counts.push(c as f64);
    }
    let mean = counts.iter().sum::<f64>() / trials as f64;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
    let se = (var / trials as f64).sqrt();
    let e = expected_identical_cliques_exact(30, 4, 2, 5).unwrap().value();
    assert!((mean - e).abs() < 4.0 * se, "mean {mean} vs {e} (se {se})");
}

#[test]
fn tree_orders() {
    assert_eq!(tree_order(3, 5), 10.0);
    assert_eq!(tree_order(3, 4), 6.0);
    assert_eq!(tree_order(4, 6), 26.0);
    assert_eq!(tree_free_lists(3, 4), 5.0);
    assert_eq!(tree_free_lists(3, 5), 6.0);
    assert_eq!(tree_free_lists(3, 6), 8.0);
}

#[test]
fn simplified_tree_bound_dominates_away_from_girth_four() {
    let mut points = 0;
    for k in 2..=6u64 {
        for g in [5u64, 6, 7, 8] {
            for sigma in [k, k + 1, 2 * k, 5 * k, 20 * k] {
                let r = tree_bad_expectation_bound(1000, 3, k, sigma, g).unwrap();
                assert!(
                    r.extras["simplified_ln"] >= r.value.ln() - 1e-9,
                    "k={k} g={g} σ={sigma}: {} < {}",
                    r.extras["simplified_ln"],
                    r.value.ln()
                );
                points += 1;
            }
        }
    }
    assert_eq!(points, 100);
}

#[test]
fn simplified_tree_bound_can_undershoot_at_girth_four() {
    // For k=2 the ratio simplified/exact is 16(σ-1)/σ², below 1 once σ >= 16.
    let r = tree_bad_expectation_bound(1000, 3, 2, 100, 4).unwrap();
    assert!(r.extras["simplified_ln"] < r.value.ln());
}

#[test]
fn chebyshev_edges() {
    assert_eq!(chebyshev_lower_bound(0.0, 0.0).unwrap().value(), 0.0);
    let lb = chebyshev_lower_bound(10.0, 0.5).unwrap().value();
    assert!(lb > 0.8 && lb <= 1.0);
}

#[test]
fn pair_range_splits_additively() {
    let whole = pair_expectation_range(5000, 3, 40, 3, 30).unwrap().value();
    let lo = pair_expectation_range(5000, 3, 40, 3, 12).unwrap().value();
    let hi = pair_expectation_range(5000, 3, 40, 13, 30).unwrap().value();
    assert!((whole - lo - hi).abs() < 1e-9 * whole);
}

proptest! {
    #[test]
    fn bounds_decrease_in_sigma(k in 2u64..5, delta in 2u64..6, sigma in 5u64..60, g in 4u64..8) {
        let sigma = sigma.max(k);
        let pairs = [
            (expected_identical_cliques_exact(500, delta.max(k), k, sigma).unwrap().value(),
             expected_identical_cliques_exact(500, delta.max(k), k, sigma + 1).unwrap().value()),
            (expected_identical_cliques_bound(500, delta, k, sigma).unwrap().value(),
             expected_identical_cliques_bound(500, delta, k, sigma + 1).unwrap().value()),
            (bad_triple_probability_bound(k + 2, delta, k, sigma).unwrap().value(),
             bad_triple_probability_bound(k + 2, delta, k, sigma + 1).unwrap().value()),
            (pair_probability_bound(5, 1, sigma).unwrap().value(),
             pair_probability_bound(5, 1, sigma + 1).unwrap().value()),
            (tree_bad_expectation_bound(500, delta, k, sigma, g).unwrap().value(),
             tree_bad_expectation_bound(500, delta, k, sigma + 1, g).unwrap().value()),
            (blocked_vertex_expectation(500, delta.max(k), k, sigma).unwrap().value(),
             blocked_vertex_expectation(500, delta.max(k), k, sigma + 1).unwrap().value()),
        ];
        for (i, (a, b)) in pairs.iter().enumerate() {
            prop_assert!(b <= a, "bound #{} rose: {} -> {}", i, a, b);
        }
    }

    #[test]
    fn bounds_increase_in_n(k in 2u64..4, delta in 2u64..6, sigma in 6u64..40, n in 10u64..10_000) {
        let a = tree_bad_expectation_bound(n, delta, k, sigma, 5).unwrap().value();
        let b = tree_bad_expectation_bound(n + 1, delta, k, sigma, 5).unwrap().value();
        prop_assert!(b >= a);
        let a = blocked_vertex_expectation(n, delta.max(k), k, sigma).unwrap().value();
        let b = blocked_vertex_expectation(n + 1, delta.max(k), k, sigma).unwrap().value();
        prop_assert!(b >= a);
    }

    #[test]
    fn chebyshev_is_a_probability(e in 0.0f64..1e6, pi in 0.0f64..1e6) {
        let v = chebyshev_lower_bound(e, pi).unwrap().value();
        prop_assert!((0.0..=1.0).contains(&v));
    }
}
