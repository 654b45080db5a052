//! Draws random k-list assignments and compares the observed rate of three
//! identical lists with the exact probability.
//!
//! cargo run --release --example sample_lists

use listcolor::graph;
use listcolor::lists::{prob_identical_lists, sample_assignment, write_lists, SeedSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = graph::complete(3);
    let (k, sigma) = (2, 4);

    let first = sample_assignment(&g, k, sigma, SeedSpec::new(42, 0))?;
    print!("{}", write_lists(&first));
    // Same seed, same lists.
    assert_eq!(first, sample_assignment(&g, k, sigma, SeedSpec::new(42, 0))?);

    let trials = 50_000;
    let mut identical = 0;
    for i in 0..trials {
        let l = sample_assignment(&g, k, sigma, SeedSpec::new(42, i))?;
        if l.list(0) == l.list(1) && l.list(1) == l.list(2) {
            identical += 1;
        }
    }
    println!(
        "identical lists on K3: observed {:.5}, exact {:.5}",
        identical as f64 / trials as f64,
        prob_identical_lists(3, k, sigma)
    );
    Ok(())
}
