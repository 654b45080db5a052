//! Builds the standard graph families and prints their basic invariants,
//! then writes one of them in the text format the CLI reads.
//!
//! cargo run --example generate_graphs

use listcolor::graph::{self, connected_graphs, write_graph, Graph};

fn describe(name: &str, g: &Graph) {
    let girth = g.girth().map_or("inf".to_string(), |x| x.to_string());
    println!(
        "{name:<22} n={:<4} m={:<5} maxdeg={:<3} girth={girth:<4} connected={}",
        g.n(),
        g.edge_count(),
        g.max_degree(),
        g.is_connected()
    );
}

fn main() -> Result<(), graph::GraphError> {
    describe("clique_union(20, 4)", &graph::clique_union(20, 4)?);
    describe("power_cycle(12, 2)", &graph::power_cycle(12, 2)?);
    describe("K_{5,5}", &graph::complete_bipartite(5, 5));
    describe("K_{3,3,3}", &graph::complete_multipartite(&[3, 3, 3])?);
    describe("C_7", &graph::cycle(7)?);
    describe("P_6", &graph::path(6));
    describe("K_6", &graph::complete(6));
    describe("Petersen", &graph::petersen());

    for order in 1..=6 {
        println!("connected graphs on <= {order} vertices: {}", connected_graphs(order).len());
    }

    print!("\n{}", write_graph(&graph::cycle(5)?));
    Ok(())
}
