//! Parses scaling expressions and evaluates them across a grid of n.
//!
//! cargo run --example scaling_expressions

use listcolor::harness::ScalingExpr;

fn main() {
    for text in ["2*n", "floor: n^(1/4) * 3", "ceil: log(log(n)) + 1", "round: n^(1/4) * 4^(1/2)"] {
        let e: ScalingExpr = text.parse().expect("valid expression");
        let values: Vec<String> = [16u64, 81, 256, 10_000]
            .iter()
            .map(|&n| e.eval_positive(n).map_or_else(|err| err.to_string(), |v| v.to_string()))
            .collect();
        println!("{text:<28} {}", values.join(" "));
    }
    for bad in ["n / (2 - 2)", "log(0)", "2 * (n", "n ^"] {
        match bad.parse::<ScalingExpr>() {
            Ok(e) => println!("{bad:<28} parsed; eval at n=3 -> {:?}", e.eval_positive(3)),
            Err(err) => println!("{bad:<28} rejected: {err}"),
        }
    }
}
