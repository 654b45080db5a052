//! Simple undirected graphs on dense vertex ids `0..n`, the generators used
//! by the experiments, and the structural queries the certificates need.

mod enumerate;
mod generators;
mod io;

pub use enumerate::{all_graphs, connected_graphs};
pub use generators::{
    clique_union, complete, complete_bipartite, complete_multipartite, cycle, path, petersen,
    power_cycle,
};
pub use io::{read_graph, write_graph};

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range (n={n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Sorted set of distinct vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, serde::Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Position of `v` in the sorted order, which is also its id in the
    /// induced subgraph.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn without(&self, v: usize) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut vs: Vec<usize> = iter.into_iter().collect();
        vs.sort_unstable();
        vs.dedup();
        VertexSet(vs)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(vs: Vec<usize>) -> Self {
        vs.into_iter().collect()
    }
}

/// Immutable simple undirected graph.
///
/// Edges are stored canonically as `(u, v)` with `u < v`, sorted; adjacency
/// lists are sorted and symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

/// Result of [`Graph::induced_subgraph`]: the subgraph relabeled to
/// `0..vertices.len()` in ascending host order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub vertices: VertexSet,
}

impl InducedSubgraph {
    pub fn to_host(&self, local: usize) -> usize {
        self.vertices.as_slice()[local]
    }

    pub fn to_local(&self, host: usize) -> Option<usize> {
        self.vertices.index_of(host)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut canon = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, edges: canon })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Length of a shortest cycle, `None` for forests.
    ///
    /// BFS from every vertex; `O(n·m)`.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.fill(usize::MAX);
            dist[root] = 0;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // Cycles found past this depth cannot beat `b`.
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced by `vs`, relabeled in ascending order.
    ///
    /// Panics if `vs` contains an id outside `0..n`.
    pub fn induced_subgraph(&self, vs: &VertexSet) -> InducedSubgraph {
        assert!(
            vs.iter().all(|v| v < self.n()),
            "vertex set not contained in graph"
        );
        let mut adj = vec![Vec::new(); vs.len()];
        let mut edges = Vec::new();
        for (i, u) in vs.iter().enumerate() {
            for &w in &self.adj[u] {
                if let Some(j) = vs.index_of(w) {
                    adj[i].push(j);
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        // Host adjacency is sorted and relabeling is monotone, so both stay sorted.
        InducedSubgraph {
            graph: Graph { adj, edges },
            vertices: vs.clone(),
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(VertexSet::from(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Disjoint union, with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::from_edges(shift + other.n(), edges).expect("union of simple graphs is simple")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(2, [(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn girth_of_small_families() {
        assert_eq!(cycle(6).unwrap().girth(), Some(6));
        assert_eq!(path(4).girth(), None);
        assert_eq!(complete(4).girth(), Some(3));
        assert_eq!(complete_bipartite(3, 3).girth(), Some(4));
        assert_eq!(petersen().girth(), Some(5));
        assert_eq!(Graph::empty(0).girth(), None);
    }

    #[test]
    fn induced_subgraphs() {
        let k4 = complete(4);
        let sub = k4.induced_subgraph(&VertexSet::from(vec![0, 1, 2]));
        assert_eq!(sub.graph, complete(3));

        let c5 = cycle(5).unwrap();
        let sub = c5.induced_subgraph(&VertexSet::from(vec![0, 1, 3]));
        assert_eq!(sub.graph.edges(), &[(0, 1)]);
        assert_eq!(sub.to_host(2), 3);
        assert_eq!(sub.to_local(3), Some(2));
        assert_eq!(sub.to_local(2), None);
    }

    #[test]
    fn petersen_induced_edge_counts_match_pair_scan() {
        let p = petersen();
        for a in 0..10 {
            for b in a + 1..10 {
                for c in b + 1..10 {
                    for d in c + 1..10 {
                        let vs = VertexSet::from(vec![a, b, c, d]);
                        let sub = p.induced_subgraph(&vs);
                        let mut count = 0;
                        for (i, &x) in vs.as_slice().iter().enumerate() {
                            for &y in &vs.as_slice()[i + 1..] {
                                if p.edges().contains(&(x, y)) {
                                    count += 1;
                                }
                            }
                        }
                        assert_eq!(sub.graph.edge_count(), count);
                    }
                }
            }
        }
    }

    #[test]
    fn components_and_union() {
        let g = complete(3).disjoint_union(&path(2));
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1].as_slice(), &[3, 4]);
        assert!(!g.is_connected());
        assert!(complete(3).is_connected());
    }

    #[test]
    fn vertex_set_normalizes() {
        let vs: VertexSet = vec![3, 1, 3, 2].into();
        assert_eq!(vs.as_slice(), &[1, 2, 3]);
        assert!(vs.contains(2));
        assert_eq!(vs.without(2).as_slice(), &[1, 3]);
    }
}
