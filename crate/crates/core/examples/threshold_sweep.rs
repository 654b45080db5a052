//! Runs a small sweep on K_{n,n} with 2-lists and prints p_hat against
//! sigma together with the interpolated 1/2 crossing.
//!
//! cargo run --release --example threshold_sweep [output-dir]

use listcolor::harness::{sweep, write_outputs, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SweepConfig::from_json(
        r#"{
            "family": {"type": "complete_bipartite"},
            "n": [20, 30],
            "k": 2,
            "sigma": ["n", "3*n/2", "2*n", "3*n", "4*n"],
            "trials": 300,
            "base_seed": 11,
            "detectors": ["two_bad_pair"]
        }"#,
    )?;
    let result = sweep(&config)?;
    for p in &result.points {
        println!(
            "n={:<3} sigma={:<4} p_hat={:.3}  [{:.3}, {:.3}]",
            p.n, p.sigma, p.p_hat, p.ci_low, p.ci_high
        );
    }
    for c in &result.crossings {
        println!("n={} crossing: {:?} ({})", c.n, c.sigma, c.note);
    }
    println!("monotone within noise: {}", result.is_monotone());
    if let Some(dir) = std::env::args().nth(1) {
        write_outputs(dir.as_ref(), &config, &result)?;
        println!("wrote {dir}/records.csv and {dir}/summary.json");
    }
    Ok(())
}
