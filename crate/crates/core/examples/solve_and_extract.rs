//! Solves a few instances and, when one is not colorable, shrinks it to a
//! critical subgraph.
//!
//! cargo run --example solve_and_extract

use listcolor::graph;
use listcolor::lists::{sample_assignment, ListAssignment, SeedSpec};
use listcolor::solver::{brute_force_colorable, extract_critical, solve, verify_coloring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // An odd cycle with every list {1, 2} cannot be colored.
    let c5 = graph::cycle(5)?;
    let two = ListAssignment::uniform(5, &[1, 2], 2)?;
    println!("C5 with lists {{1,2}}: {:?}", solve(&c5, &two).status);

    // Disjoint K4s with 3-lists from 4 colors.
    let g = graph::clique_union(12, 3)?;
    let mut shown = false;
    for trial in 0..200 {
        let lists = sample_assignment(&g, 3, 4, SeedSpec::new(7, trial))?;
        let res = solve(&g, &lists);
        assert_eq!(res.is_colorable(), brute_force_colorable(&g, lists.lists())?);
        if let Some(phi) = &res.witness {
            assert!(verify_coloring(&g, &lists, phi));
        } else if !shown {
            let crit = extract_critical(&g, &lists)?;
            println!(
                "trial {trial}: uncolorable after {} nodes; critical subgraph on {:?}",
                res.stats.nodes,
                crit.vertices.as_slice()
            );
            shown = true;
        }
    }
    Ok(())
}
