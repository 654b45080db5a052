//! Alternating paths relative to a coloring of all vertices but one.
//!
//! A step `w -> x` is allowed when `x` is adjacent to `w`, `x` is not the
//! origin and `φ(x) ∈ L(w)`. Shortest walks under this relation are simple
//! paths (a repeated vertex can be shortcut), so BFS distances are shortest
//! alternating path lengths.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::lists::Color;
use crate::solver::{verify_partial_coloring, Coloring};

use super::CertError;

/// Checks that `phi` colors exactly the vertices other than `origin`,
/// properly and from their lists.
pub(crate) fn check_coloring_of_rest(
    g: &Graph,
    lists: &[Vec<Color>],
    phi: &Coloring,
    origin: usize,
) -> Result<(), CertError> {
    if origin >= g.n() || phi.len() != g.n() || lists.len() != g.n() {
        return Err(CertError::InvalidColoring(
            "coloring, lists and graph sizes differ".into(),
        ));
    }
    if phi.get(origin).is_some() {
        return Err(CertError::InvalidColoring(format!(
            "origin {origin} must be uncolored"
        )));
    }
    if let Some(v) = (0..g.n()).find(|&v| v != origin && phi.get(v).is_none()) {
        return Err(CertError::InvalidColoring(format!("vertex {v} is uncolored")));
    }
    if !verify_partial_coloring(g, lists, phi) {
        return Err(CertError::InvalidColoring(
            "not a proper coloring from the lists".into(),
        ));
    }
    Ok(())
}

/// Distances without validation; callers guarantee the coloring shape.
pub(crate) fn distances_unchecked(
    g: &Graph,
    lists: &[Vec<Color>],
    phi: &Coloring,
    origin: usize,
) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[origin] = Some(0);
    let mut queue = VecDeque::from([origin]);
    while let Some(w) = queue.pop_front() {
        let d = dist[w].expect("queued vertices have a distance");
        for &x in g.neighbors(w) {
            if dist[x].is_some() {
                continue;
            }
            if let Some(c) = phi.get(x) {
                if lists[w].contains(&c) {
                    dist[x] = Some(d + 1);
                    queue.push_back(x);
                }
            }
        }
    }
    dist
}

/// Shortest alternating path length from `origin` to every vertex, `None`
/// when unreachable.
///
/// `phi` must color every vertex except `origin` properly from its list.
pub fn alternating_distances(
    g: &Graph,
    lists: &[Vec<Color>],
    phi: &Coloring,
    origin: usize,
) -> Result<Vec<Option<usize>>, CertError> {
    check_coloring_of_rest(g, lists, phi, origin)?;
    Ok(distances_unchecked(g, lists, phi, origin))
}

/// The rank function induced by the lists and `phi`: shortest alternating
/// distance from `origin`. Fails if some vertex is unreachable.
pub fn induced_rank(
    g: &Graph,
    lists: &[Vec<Color>],
    phi: &Coloring,
    origin: usize,
) -> Result<Vec<usize>, CertError> {
    alternating_distances(g, lists, phi, origin)?
        .into_iter()
        .enumerate()
        .map(|(v, d)| d.ok_or(CertError::Unreachable { vertex: v }))
        .collect()
}
