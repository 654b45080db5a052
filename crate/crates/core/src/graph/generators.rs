//! Deterministic generators for the graph families used in experiments.

use super::{Graph, GraphError};

/// `r`-th power of the cycle on `n` vertices: `i ~ j` iff their circular
/// distance is at most `r`.
pub fn power_cycle(n: usize, r: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameters(format!(
            "power cycle needs n >= 3, got {n}"
        )));
    }
    if r == 0 || 2 * r >= n {
        return Err(GraphError::InvalidParameters(format!(
            "power cycle needs 1 <= r < n/2, got n={n} r={r}"
        )));
    }
    let edges = (0..n).flat_map(|i| (1..=r).map(move |d| (i, (i + d) % n)));
    Graph::from_edges(n, edges)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    power_cycle(n, 1)
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete graph is simple")
}

/// `⌊n/(Δ+1)⌋` disjoint copies of `K_{Δ+1}` on consecutive ids, followed by
/// `n mod (Δ+1)` isolated vertices.
pub fn clique_union(n: usize, delta: usize) -> Result<Graph, GraphError> {
    if delta == 0 || delta + 1 > n {
        return Err(GraphError::InvalidParameters(format!(
            "clique union needs n >= delta+1 >= 2, got n={n} delta={delta}"
        )));
    }
    let block = delta + 1;
    let blocks = n / block;
    let edges = (0..blocks).flat_map(move |b| {
        let base = b * block;
        (0..block).flat_map(move |i| (i + 1..block).map(move |j| (base + i, base + j)))
    });
    Graph::from_edges(n, edges)
}

/// Complete multipartite graph; parts occupy consecutive id ranges.
pub fn complete_multipartite(part_sizes: &[usize]) -> Result<Graph, GraphError> {
    if part_sizes.len() < 2 || part_sizes.contains(&0) {
        return Err(GraphError::InvalidParameters(format!(
            "complete multipartite graph needs >= 2 non-empty parts, got {part_sizes:?}"
        )));
    }
    let mut part_of = Vec::new();
    for (p, &size) in part_sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, size));
    }
    let n = part_of.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    complete_multipartite(&[a.max(1), b.max(1)]).expect("two non-empty parts")
}

/// The Petersen graph: outer 5-cycle `0..5`, spokes `i ~ i+5`, inner
/// pentagram on `5..10`.
pub fn petersen() -> Graph {
    let edges = (0..5).flat_map(|i| {
        [
            (i, (i + 1) % 5),
            (i, i + 5),
            (5 + i, 5 + (i + 2) % 5),
        ]
    });
    Graph::from_edges(10, edges).expect("petersen graph is simple")
}
