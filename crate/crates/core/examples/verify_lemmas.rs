//! Checks the certificate characterizations exhaustively on small graphs.
//!
//! cargo run --release --example verify_lemmas

use listcolor::harness::{verify_lemmas, CorpusSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = verify_lemmas(&CorpusSpec {
        max_order: 6,
        trials_per_graph: 10,
        ..CorpusSpec::default()
    })?;
    println!(
        "{} graphs, {} instances, {} uncolorable; triples {} pairs {} trees {}",
        report.graphs,
        report.instances,
        report.uncolorable,
        report.triple_checked,
        report.pair_checked,
        report.tree_checked
    );

    let girth4 = verify_lemmas(&CorpusSpec {
        max_order: 7,
        min_girth: Some(4),
        ks: vec![2],
        sigmas: vec![2, 3],
        trials_per_graph: 10,
        ..CorpusSpec::default()
    })?;
    println!("girth >= 4: odd trees {}, even trees {}", girth4.odd_tree_hits, girth4.even_tree_hits);

    for c in report.counterexamples.iter().chain(&girth4.counterexamples) {
        println!("counterexample ({}): {}\n{}{}", c.check, c.detail, c.graph, c.lists);
    }
    Ok(())
}
