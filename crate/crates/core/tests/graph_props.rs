use listcolor::graph::{self, all_graphs, connected_graphs, read_graph, write_graph, Graph, VertexSet};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Shortest cycle by trying every simple path that closes up.
fn girth_by_paths(g: &Graph) -> Option<usize> {
    fn extend(g: &Graph, path: &mut Vec<usize>, best: &mut Option<usize>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w == start && path.len() >= 3 {
                *best = Some(best.map_or(path.len(), |b| b.min(path.len())));
            } else if w > start && !path.contains(&w) {
                path.push(w);
                extend(g, path, best);
                path.pop();
            }
        }
    }
    let mut best = None;
    for s in 0..g.n() {
        extend(g, &mut vec![s], &mut best);
    }
    best
}

#[test]
fn girth_matches_path_search_on_small_graphs() {
    for g in connected_graphs(6) {
        assert_eq!(g.girth(), girth_by_paths(&g), "{}", write_graph(&g));
    }
}

#[test]
fn known_girths() {
    assert_eq!(graph::petersen().girth(), Some(5));
    assert_eq!(graph::complete_bipartite(3, 4).girth(), Some(4));
    assert_eq!(graph::cycle(9).unwrap().girth(), Some(9));
    assert_eq!(graph::path(9).girth(), None);
    assert_eq!(graph::complete(4).girth(), Some(3));
}

#[test]
fn graph_counts_by_order() {
    // Labelled graphs on n vertices up to isomorphism: 1, 2, 4, 11, 34.
    let counts: Vec<usize> = (1..=5).map(|n| all_graphs(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    // Connected: 1, 1, 2, 6, 21, 112.
    assert_eq!(connected_graphs(6).len(), 1 + 1 + 2 + 6 + 21 + 112);
}

#[test]
fn family_shapes() {
    let cu = graph::clique_union(23, 4).unwrap();
    assert_eq!(cu.n(), 23);
    assert_eq!(cu.edge_count(), 4 * 10);
    // Four K5s and three leftover isolated vertices.
    assert_eq!(cu.components().len(), 7);
    let pc = graph::power_cycle(10, 3).unwrap();
    assert!((0..10).all(|v| pc.degree(v) == 6));
    let mp = graph::complete_multipartite(&[2, 3, 4]).unwrap();
    assert_eq!(mp.edge_count(), 2 * 3 + 2 * 4 + 3 * 4);
}

proptest! {
    #[test]
    fn text_format_round_trips(g in arb_graph(9)) {
        prop_assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn induced_subgraph_keeps_exactly_inner_edges(g in arb_graph(9), mask in any::<u16>()) {
        let vs: VertexSet = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        let sub = g.induced_subgraph(&vs);
        prop_assert_eq!(sub.graph.n(), vs.len());
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                if i != j {
                    prop_assert_eq!(sub.graph.has_edge(i, j), g.has_edge(sub.to_host(i), sub.to_host(j)));
                }
            }
        }
    }

    #[test]
    fn girth_agrees_with_path_search(g in arb_graph(8)) {
        prop_assert_eq!(g.girth(), girth_by_paths(&g));
    }

    #[test]
    fn components_partition_vertices(g in arb_graph(10)) {
        let comps = g.components();
        let mut all: Vec<usize> = comps.iter().flat_map(|c| c.iter()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        for c in &comps {
            prop_assert!(g.induced_subgraph(c).graph.is_connected());
        }
        let edges_inside: usize = comps.iter().map(|c| g.induced_subgraph(c).graph.edge_count()).sum();
        prop_assert_eq!(edges_inside, g.edge_count());
    }

    #[test]
    fn adjacency_is_symmetric(g in arb_graph(10)) {
        let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        for &(u, v) in g.edges() {
            prop_assert!(g.neighbors(u).contains(&v) && g.neighbors(v).contains(&u));
        }
    }
}
