//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! Graphs on `n` vertices are grown from those on `n - 1` vertices by adding
//! a vertex with every possible neighborhood; duplicates are removed through
//! a canonical adjacency code (lexicographically least upper triangle over
//! all relabelings that respect a degree-based vertex partition).

use std::collections::BTreeSet;

use super::Graph;

/// Largest order supported; the canonical code packs the upper triangle into
/// a `u64`.
pub const MAX_ENUMERATION_ORDER: usize = 10;

type Adjacency = Vec<u16>;

/// All graphs on exactly `n` vertices, one per isomorphism class, in a
/// deterministic order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_ENUMERATION_ORDER, "order {n} too large to enumerate");
    layers(n)
        .pop()
        .unwrap_or_default()
        .into_iter()
        .map(|code| decode(n, code))
        .collect()
}

/// All connected graphs on `1..=max_n` vertices up to isomorphism, ordered by
/// vertex count.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    assert!(
        max_n <= MAX_ENUMERATION_ORDER,
        "order {max_n} too large to enumerate"
    );
    layers(max_n)
        .into_iter()
        .enumerate()
        .flat_map(|(i, codes)| {
            let n = i + 1;
            codes.into_iter().map(move |code| decode(n, code))
        })
        .filter(Graph::is_connected)
        .collect()
}

/// Canonical codes for orders `1..=max_n`.
fn layers(max_n: usize) -> Vec<BTreeSet<u64>> {
    let mut out: Vec<BTreeSet<u64>> = Vec::new();
    if max_n == 0 {
        return out;
    }
    out.push(BTreeSet::from([0]));
    for n in 2..=max_n {
        let prev = out.last().expect("previous layer");
        let mut next = BTreeSet::new();
        for &code in prev {
            let base = to_adjacency(n - 1, code);
            for mask in 0u16..(1 << (n - 1)) {
                let mut adj = base.clone();
                adj.push(mask);
                for (v, row) in adj.iter_mut().enumerate().take(n - 1) {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                next.insert(canonical_code(&adj));
            }
        }
        out.push(next);
    }
    out
}

fn code_of(adj: &Adjacency, order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code <<= 1;
            if adj[order[i]] >> order[j] & 1 == 1 {
                code |= 1;
            }
        }
    }
    code
}

fn to_adjacency(n: usize, code: u64) -> Adjacency {
    let mut adj = vec![0u16; n];
    let total = n * n.saturating_sub(1) / 2;
    let mut bit = total;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

fn decode(n: usize, code: u64) -> Graph {
    let adj = to_adjacency(n, code);
    let edges = (0..n).flat_map(|i| {
        let row = adj[i];
        (i + 1..n).filter(move |&j| row >> j & 1 == 1).map(move |j| (i, j))
    });
    Graph::from_edges(n, edges.collect::<Vec<_>>()).expect("decoded graph is simple")
}

fn canonical_code(adj: &Adjacency) -> u64 {
    let n = adj.len();
    let degree: Vec<u32> = adj.iter().map(|r| r.count_ones()).collect();
    let invariant = |v: usize| {
        let mut nd: Vec<u32> = (0..n)
            .filter(|&w| adj[v] >> w & 1 == 1)
            .map(|w| degree[w])
            .collect();
        nd.sort_unstable();
        (degree[v], nd)
    };
    let mut keyed: Vec<_> = (0..n).map(|v| (invariant(v), v)).collect();
    keyed.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, (key, v)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == *key {
            cells.last_mut().expect("open cell").push(*v);
        } else {
            cells.push(vec![*v]);
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut best = u64::MAX;
    permute_cells(adj, &mut cells, 0, 0, &mut order, &mut best);
    best
}

fn permute_cells(
    adj: &Adjacency,
    cells: &mut [Vec<usize>],
    cell: usize,
    pos: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if cell == cells.len() {
        *best = (*best).min(code_of(adj, order));
        return;
    }
    if pos == cells[cell].len() {
        permute_cells(adj, cells, cell + 1, 0, order, best);
        return;
    }
    for i in pos..cells[cell].len() {
        cells[cell].swap(pos, i);
        order.push(cells[cell][pos]);
        permute_cells(adj, cells, cell, pos + 1, order, best);
        order.pop();
        cells[cell].swap(pos, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequences() {
        // Graphs and connected graphs up to isomorphism on n vertices.
        let all = [1, 2, 4, 11, 34, 156, 1044];
        let connected = [1, 1, 2, 6, 21, 112, 853];
        for n in 1..=7 {
            let gs = all_graphs(n);
            assert_eq!(gs.len(), all[n - 1], "all graphs on {n}");
            assert_eq!(
                gs.iter().filter(|g| g.is_connected()).count(),
                connected[n - 1],
                "connected graphs on {n}"
            );
        }
        assert_eq!(connected_graphs(7).len(), connected.iter().sum::<usize>());
    }

    #[test]
    fn canonical_code_is_relabeling_invariant() {
        let c5 = crate::graph::cycle(5).unwrap();
        let adj = |g: &Graph, perm: &[usize]| {
            let mut a = vec![0u16; g.n()];
            for &(u, v) in g.edges() {
                a[perm[u]] |= 1 << perm[v];
                a[perm[v]] |= 1 << perm[u];
            }
            a
        };
        let base = canonical_code(&adj(&c5, &[0, 1, 2, 3, 4]));
        assert_eq!(base, canonical_code(&adj(&c5, &[2, 4, 1, 3, 0])));
        assert_eq!(base, canonical_code(&adj(&c5, &[4, 3, 2, 1, 0])));
    }
}
