//! Extraction of a connected induced L-critical subgraph.

use crate::graph::{Graph, VertexSet};
use crate::lists::ListAssignment;

use super::{solve_lists, SolverError};

/// A connected induced subgraph that is not L-colorable while every proper
/// vertex-deleted subgraph is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalSubgraph {
    /// Host vertex ids; local vertex `i` of `graph` is `vertices[i]`.
    pub vertices: VertexSet,
    pub graph: Graph,
    pub lists: ListAssignment,
}

/// First (by smallest vertex) connected component of `G[vs]` that is not
/// colorable from its lists, in host ids.
fn first_uncolorable_component(
    g: &Graph,
    lists: &ListAssignment,
    vs: &VertexSet,
) -> Option<VertexSet> {
    let sub = g.induced_subgraph(vs);
    sub.graph.components().into_iter().find_map(|comp| {
        let host: VertexSet = comp.iter().map(|i| sub.to_host(i)).collect();
        let part = g.induced_subgraph(&host);
        let part_lists = lists.restrict(&host);
        (!solve_lists(&part.graph, part_lists.lists()).is_colorable()).then_some(host)
    })
}

/// Deletes vertices in ascending id order whenever the remainder keeps an
/// uncolorable component, narrowing to that component each time.
///
/// A single pass suffices: a vertex kept at its turn was essential for the
/// current superset, so it stays essential for every subset that remains.
pub fn extract_critical(
    g: &Graph,
    lists: &ListAssignment,
) -> Result<CriticalSubgraph, SolverError> {
    if lists.len() != g.n() {
        return Err(SolverError::SizeMismatch {
            lists: lists.len(),
            n: g.n(),
        });
    }
    let mut current =
        first_uncolorable_component(g, lists, &VertexSet::full(g.n())).ok_or(SolverError::Colorable)?;
    let candidates: Vec<usize> = current.iter().collect();
    for v in candidates {
        if !current.contains(v) {
            continue;
        }
        if let Some(smaller) = first_uncolorable_component(g, lists, &current.without(v)) {
            current = smaller;
        }
    }
    let graph = g.induced_subgraph(&current).graph;
    Ok(CriticalSubgraph {
        lists: lists.restrict(&current),
        graph,
        vertices: current,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};
    use crate::solver::solve;

    fn assert_critical(c: &CriticalSubgraph) {
        assert!(c.graph.is_connected());
        assert!(!solve(&c.graph, &c.lists).is_colorable());
        for v in 0..c.graph.n() {
            let rest = VertexSet::full(c.graph.n()).without(v);
            let sub = c.graph.induced_subgraph(&rest);
            assert!(solve(&sub.graph, &c.lists.restrict(&rest)).is_colorable());
        }
    }

    #[test]
    fn k4_with_pendant() {
        let g = Graph::from_edges(5, complete(4).edges().iter().copied().chain([(3, 4)])).unwrap();
        let l = ListAssignment::uniform(5, &[1, 2, 3], 3).unwrap();
        let c = extract_critical(&g, &l).unwrap();
        assert_eq!(c.vertices.as_slice(), &[0, 1, 2, 3]);
        assert_critical(&c);
    }

    #[test]
    fn odd_cycle_is_its_own_core() {
        let g = cycle(5).unwrap();
        let l = ListAssignment::uniform(5, &[1, 2], 2).unwrap();
        let c = extract_critical(&g, &l).unwrap();
        assert_eq!(c.vertices, VertexSet::full(5));
        assert_critical(&c);
    }

    #[test]
    fn two_bad_triangles_give_one() {
        let g = complete(3).disjoint_union(&complete(3));
        let l = ListAssignment::uniform(6, &[1, 2], 2).unwrap();
        let c = extract_critical(&g, &l).unwrap();
        assert_eq!(c.vertices.len(), 3);
        assert_critical(&c);
        for tri in [vec![0, 1, 2], vec![3, 4, 5]] {
            let vs = VertexSet::from(tri);
            let sub = g.induced_subgraph(&vs);
            let sub_lists = l.restrict(&vs);
            assert!(!solve(&sub.graph, &sub_lists).is_colorable());
        }
    }

    #[test]
    fn colorable_is_a_contract_violation() {
        let g = cycle(4).unwrap();
        let l = ListAssignment::uniform(4, &[1, 2], 2).unwrap();
        assert_eq!(extract_critical(&g, &l), Err(SolverError::Colorable));
    }
}
