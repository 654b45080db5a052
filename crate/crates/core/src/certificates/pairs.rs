//! Ordered cycles and lollipops, alternating color chains for 2-lists, and
//! 2-bad proper pairs.
//!
//! An ordered cycle `v1 .. vd v1` closes back to its first vertex; an ordered
//! lollipop `v1 .. vj .. vd vj` closes to an interior vertex `vj` with
//! `2 <= j <= d-2` (1-based). With 2-lists, a sequence is alternating when a
//! color chain `c1, ..., c(d-1)` exists with `c1 ∈ L(v1)`,
//! `L(vi) = {c(i-1), ci}` for `2 <= i <= d-1`, and `L(vd) = {c(d-1), c1}`
//! (cycle) or `{c(d-1), cj}` (lollipop).

use std::collections::HashSet;

use crate::graph::Graph;
use crate::lists::{Color, ListAssignment};

use super::CertError;

/// Limit on the number of partial sequences a pair search may extend.
pub const PAIR_SEARCH_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SeqKind {
    Cycle,
    /// Closes to `vertices[join]` (0-based, `1 <= join <= d-3`).
    Lollipop { join: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct OrderedSeq {
    pub vertices: Vec<usize>,
    pub kind: SeqKind,
}

impl OrderedSeq {
    pub fn cycle(g: &Graph, vertices: Vec<usize>) -> Result<Self, CertError> {
        let s = OrderedSeq {
            vertices,
            kind: SeqKind::Cycle,
        };
        s.validate(g)?;
        Ok(s)
    }

    pub fn lollipop(g: &Graph, vertices: Vec<usize>, join: usize) -> Result<Self, CertError> {
        let s = OrderedSeq {
            vertices,
            kind: SeqKind::Lollipop { join },
        };
        s.validate(g)?;
        Ok(s)
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn second(&self) -> usize {
        self.vertices[1]
    }

    /// Index the last vertex closes to.
    pub fn closing_index(&self) -> usize {
        match self.kind {
            SeqKind::Cycle => 0,
            SeqKind::Lollipop { join } => join,
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), CertError> {
        let bad = |msg: String| Err(CertError::InvalidSequence(msg));
        let d = self.vertices.len();
        match self.kind {
            SeqKind::Cycle if d < 3 => return bad(format!("cycle needs 3 vertices, got {d}")),
            SeqKind::Lollipop { join } if join == 0 || join + 3 > d => {
                return bad(format!("lollipop join {join} outside 1..={}", d.saturating_sub(3)))
            }
            _ => {}
        }
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= g.n()) {
            return bad(format!("vertex {v} not in graph"));
        }
        let distinct: HashSet<usize> = self.vertices.iter().copied().collect();
        if distinct.len() != d {
            return bad("repeated vertex".into());
        }
        if let Some(w) = self.vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return bad(format!("{} and {} are not adjacent", w[0], w[1]));
        }
        let (last, target) = (self.vertices[d - 1], self.vertices[self.closing_index()]);
        if !g.has_edge(last, target) {
            return bad(format!("closing edge {last} {target} missing"));
        }
        Ok(())
    }

    /// Edges of the sequence including the closing edge, as `(min, max)`.
    pub fn edges(&self) -> HashSet<(usize, usize)> {
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut e: HashSet<_> = self.vertices.windows(2).map(|w| key(w[0], w[1])).collect();
        let d = self.vertices.len();
        e.insert(key(self.vertices[d - 1], self.vertices[self.closing_index()]));
        e
    }
}

fn other_color(list: &[Color], c: Color) -> Option<Color> {
    match list {
        [a, b] if *a == c => Some(*b),
        [a, b] if *b == c => Some(*a),
        _ => None,
    }
}

fn check_two_lists(seq: &OrderedSeq, lists: &ListAssignment) -> Result<(), CertError> {
    match seq.vertices.iter().find(|&&v| lists.list(v).len() != 2) {
        Some(&vertex) => Err(CertError::ListSize { vertex }),
        None => Ok(()),
    }
}

/// The color chain `c1, ..., c(d-1)` of `seq` with first color `first`, if
/// the sequence is alternating with it.
pub fn alternating_chain(
    seq: &OrderedSeq,
    lists: &ListAssignment,
    first: Color,
) -> Result<Option<Vec<Color>>, CertError> {
    check_two_lists(seq, lists)?;
    let vs = &seq.vertices;
    let d = vs.len();
    if !lists.list(vs[0]).contains(&first) {
        return Ok(None);
    }
    let mut chain = vec![first];
    for &v in &vs[1..d - 1] {
        match other_color(lists.list(v), *chain.last().expect("non-empty chain")) {
            Some(c) => chain.push(c),
            None => return Ok(None),
        }
    }
    let closing = other_color(lists.list(vs[d - 1]), chain[d - 2]);
    Ok((closing == Some(chain[seq.closing_index()])).then_some(chain))
}

/// First color (ascending) of `L(v1)` for which `seq` is alternating,
/// with its chain.
pub fn is_l_alternating(
    seq: &OrderedSeq,
    lists: &ListAssignment,
) -> Result<Option<(Color, Vec<Color>)>, CertError> {
    check_two_lists(seq, lists)?;
    for &c in lists.list(seq.first()) {
        if let Some(chain) = alternating_chain(seq, lists, c)? {
            return Ok(Some((c, chain)));
        }
    }
    Ok(None)
}

/// Two ordered sequences with a common first vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ProperPair {
    pub h1: OrderedSeq,
    pub h2: OrderedSeq,
}

impl ProperPair {
    pub fn new(g: &Graph, h1: OrderedSeq, h2: OrderedSeq) -> Result<Self, CertError> {
        h1.validate(g)?;
        h2.validate(g)?;
        if h1.first() != h2.first() {
            return Err(CertError::InvalidSequence(
                "sequences must share their first vertex".into(),
            ));
        }
        Ok(ProperPair { h1, h2 })
    }

    /// `|V(H1) ∪ V(H2)|`.
    pub fn vertex_count(&self) -> usize {
        let all: HashSet<usize> = self.h1.vertices.iter().chain(&self.h2.vertices).copied().collect();
        all.len()
    }
}

/// Chains showing a pair is 2-bad.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct TwoBadWitness {
    pub chain1: Vec<Color>,
    pub chain2: Vec<Color>,
}

/// A pair is 2-bad when both sequences are alternating, their first colors
/// are the two colors of the shared first vertex, and their second vertices
/// differ.
pub fn is_2bad(
    g: &Graph,
    pair: &ProperPair,
    lists: &ListAssignment,
) -> Result<Option<TwoBadWitness>, CertError> {
    pair.h1.validate(g)?;
    pair.h2.validate(g)?;
    check_two_lists(&pair.h1, lists)?;
    check_two_lists(&pair.h2, lists)?;
    if pair.h1.first() != pair.h2.first() || pair.h1.second() == pair.h2.second() {
        return Ok(None);
    }
    let l = lists.list(pair.h1.first());
    for (a, b) in [(l[0], l[1]), (l[1], l[0])] {
        let c1 = alternating_chain(&pair.h1, lists, a)?;
        let c2 = alternating_chain(&pair.h2, lists, b)?;
        if let (Some(chain1), Some(chain2)) = (c1, c2) {
            return Ok(Some(TwoBadWitness { chain1, chain2 }));
        }
    }
    Ok(None)
}

/// Number of common vertices other than the first whose predecessor along
/// `H2` is not joined to them by an edge of `H1` (closing edge included).
/// A lollipop's join vertex is taken at its first occurrence.
pub fn count_nonconsecutive(pair: &ProperPair) -> usize {
    let e1 = pair.h1.edges();
    let in_h1: HashSet<usize> = pair.h1.vertices.iter().copied().collect();
    pair.h2
        .vertices
        .windows(2)
        .filter(|w| {
            let (u, x) = (w[0], w[1]);
            in_h1.contains(&x) && !e1.contains(&(u.min(x), u.max(x)))
        })
        .count()
}

struct SeqSearch<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    steps: u64,
    path: Vec<usize>,
    chain: Vec<Color>,
    on_path: Vec<bool>,
}

impl SeqSearch<'_> {
    /// Depth-first search for an alternating sequence extending the current
    /// path; the last vertex entered with color `incoming`.
    fn extend(&mut self, incoming: Color) -> Result<Option<OrderedSeq>, CertError> {
        self.steps += 1;
        if self.steps > PAIR_SEARCH_LIMIT {
            return Err(CertError::GuardExceeded(format!(
                "alternating sequence search exceeded {PAIR_SEARCH_LIMIT} steps"
            )));
        }
        let x = *self.path.last().expect("non-empty path");
        let Some(out) = other_color(self.lists.list(x), incoming) else {
            return Ok(None);
        };
        let d = self.path.len();
        if d >= 3 {
            // Close to v1 (cycle) or to an interior vj (lollipop).
            if out == self.chain[0] && self.g.has_edge(x, self.path[0]) {
                return Ok(Some(OrderedSeq {
                    vertices: self.path.clone(),
                    kind: SeqKind::Cycle,
                }));
            }
            for join in 1..d.saturating_sub(2) {
                if out == self.chain[join] && self.g.has_edge(x, self.path[join]) {
                    return Ok(Some(OrderedSeq {
                        vertices: self.path.clone(),
                        kind: SeqKind::Lollipop { join },
                    }));
                }
            }
        }
        for &y in self.g.neighbors(x) {
            if self.on_path[y] || !self.lists.list(y).contains(&out) {
                continue;
            }
            self.path.push(y);
            self.on_path[y] = true;
            self.chain.push(out);
            let found = self.extend(out)?;
            self.chain.pop();
            self.on_path[y] = false;
            self.path.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// First alternating sequence (depth-first, neighbors ascending) starting
/// `v, w` with first color `first`.
fn find_sequence(
    g: &Graph,
    lists: &ListAssignment,
    v: usize,
    w: usize,
    first: Color,
    steps: &mut u64,
) -> Result<Option<OrderedSeq>, CertError> {
    if !lists.list(w).contains(&first) {
        return Ok(None);
    }
    let mut on_path = vec![false; g.n()];
    on_path[v] = true;
    on_path[w] = true;
    let mut s = SeqSearch {
        g,
        lists,
        steps: *steps,
        path: vec![v, w],
        chain: vec![first],
        on_path,
    };
    let r = s.extend(first);
    *steps = s.steps;
    r
}

/// Searches for a 2-bad proper pair. Requires every list to have exactly
/// two colors.
pub fn find_2bad_pair(g: &Graph, lists: &ListAssignment) -> Result<Option<ProperPair>, CertError> {
    if lists.k() != 2 {
        return Err(CertError::ListSize { vertex: 0 });
    }
    let mut steps = 0;
    for v in 0..g.n() {
        let l = lists.list(v);
        let mut by_color: [Vec<(usize, OrderedSeq)>; 2] = [Vec::new(), Vec::new()];
        for (slot, &c) in l.iter().enumerate() {
            for &w in g.neighbors(v) {
                if let Some(seq) = find_sequence(g, lists, v, w, c, &mut steps)? {
                    by_color[slot].push((w, seq));
                }
            }
        }
        for (w1, h1) in &by_color[0] {
            if let Some((_, h2)) = by_color[1].iter().find(|(w2, _)| w2 != w1) {
                return Ok(Some(ProperPair {
                    h1: h1.clone(),
                    h2: h2.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Every ordered cycle and lollipop of `g` with at most `max_len` vertices.
pub fn enumerate_ordered_seqs(g: &Graph, max_len: usize) -> Vec<OrderedSeq> {
    fn rec(g: &Graph, max_len: usize, path: &mut Vec<usize>, out: &mut Vec<OrderedSeq>) {
        let d = path.len();
        let x = path[d - 1];
        if d >= 3 && g.has_edge(x, path[0]) {
            out.push(OrderedSeq {
                vertices: path.clone(),
                kind: SeqKind::Cycle,
            });
        }
        for join in 1..d.saturating_sub(2) {
            if g.has_edge(x, path[join]) {
                out.push(OrderedSeq {
                    vertices: path.clone(),
                    kind: SeqKind::Lollipop { join },
                });
            }
        }
        if d == max_len {
            return;
        }
        for &y in g.neighbors(x) {
            if !path.contains(&y) {
                path.push(y);
                rec(g, max_len, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..g.n() {
        rec(g, max_len, &mut vec![v], &mut out);
    }
    out
}
