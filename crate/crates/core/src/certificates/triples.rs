//! Proper triples `(F, v1, R)`: a connected induced subgraph, a root and a
//! rank function in which every positive-rank vertex has a neighbor one rank
//! lower. A triple is bad for a list assignment when `F` is not colorable and
//! some coloring of `F - v1` realizes the alternating-path conditions with
//! `R` as its induced rank.

use crate::graph::{Graph, VertexSet};
use crate::lists::{Color, ListAssignment};
use crate::moments::{factorial, LogValue};
use crate::solver::{extract_critical, solve_lists, Coloring};

use super::alternating::distances_unchecked;
use super::CertError;

/// Largest `|V(F)|` for which badness is decided by enumerating colorings.
pub const MAX_BAD_TRIPLE_ORDER: usize = 12;

/// Largest number of triples [`for_each_proper_triple`] may visit.
pub const TRIPLE_ENUMERATION_LIMIT: f64 = 1e7;

#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ProperTriple {
    /// Host ids of `V(F)`.
    pub vertices: VertexSet,
    pub root: usize,
    /// `ranks[i]` is the rank of `vertices[i]`.
    pub ranks: Vec<usize>,
}

impl ProperTriple {
    /// Validates the proper-triple conditions in `g`.
    pub fn new(
        g: &Graph,
        vertices: VertexSet,
        root: usize,
        ranks: Vec<usize>,
    ) -> Result<Self, CertError> {
        let t = ProperTriple {
            vertices,
            root,
            ranks,
        };
        t.validate(g)?;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn rank_of(&self, v: usize) -> Option<usize> {
        self.vertices.index_of(v).map(|i| self.ranks[i])
    }

    pub fn validate(&self, g: &Graph) -> Result<(), CertError> {
        let bad = |msg: String| Err(CertError::NotProper(msg));
        let m = self.vertices.len();
        if self.ranks.len() != m {
            return bad(format!("{} ranks for {m} vertices", self.ranks.len()));
        }
        if let Some(v) = self.vertices.iter().find(|&v| v >= g.n()) {
            return bad(format!("vertex {v} not in graph"));
        }
        let Some(ri) = self.vertices.index_of(self.root) else {
            return bad(format!("root {} not in F", self.root));
        };
        if self.ranks[ri] != 0 {
            return bad("root rank must be 0".into());
        }
        for (i, v) in self.vertices.iter().enumerate() {
            let r = self.ranks[i];
            if i == ri {
                continue;
            }
            if r == 0 || r >= m {
                return bad(format!("vertex {v} has rank {r} outside 1..{m}"));
            }
            let ladder = g
                .neighbors(v)
                .iter()
                .any(|&x| self.rank_of(x) == Some(r - 1));
            if !ladder {
                return bad(format!("vertex {v} of rank {r} has no neighbor of rank {}", r - 1));
            }
        }
        Ok(())
    }
}

/// Checks the alternating-path conditions for a coloring `phi` of `F - root`
/// in local ids and returns the induced ranks when they hold.
pub(crate) fn charac_ranks(
    f: &Graph,
    lists: &[Vec<Color>],
    root: usize,
    phi: &Coloring,
) -> Option<Vec<usize>> {
    let dist = distances_unchecked(f, lists, phi, root);
    // (i) every vertex is reached by an alternating path.
    let ranks: Vec<usize> = dist.into_iter().collect::<Option<_>>()?;
    // (ii) every color of the root's list sits on a neighbor.
    let covered = lists[root]
        .iter()
        .all(|&c| f.neighbors(root).iter().any(|&w| phi.get(w) == Some(c)));
    if !covered {
        return None;
    }
    // (iii) every other color of a non-root vertex is blocked by a neighbor
    // of that color or offered by a lower-rank neighbor.
    for x in (0..f.n()).filter(|&x| x != root) {
        let own = phi.get(x);
        for &c in &lists[x] {
            if Some(c) == own {
                continue;
            }
            let ok = f.neighbors(x).iter().any(|&y| {
                phi.get(y) == Some(c) || (lists[y].contains(&c) && ranks[y] < ranks[x])
            });
            if !ok {
                return None;
            }
        }
    }
    Some(ranks)
}

/// Calls `visit` on every L-coloring of `g - skip` (vertices in ascending
/// order, colors ascending) until it returns `true`.
pub(crate) fn for_each_coloring_except(
    g: &Graph,
    lists: &[Vec<Color>],
    skip: usize,
    visit: &mut dyn FnMut(&Coloring) -> bool,
) -> bool {
    fn rec(
        g: &Graph,
        lists: &[Vec<Color>],
        skip: usize,
        v: usize,
        phi: &mut Coloring,
        visit: &mut dyn FnMut(&Coloring) -> bool,
    ) -> bool {
        if v == g.n() {
            return visit(phi);
        }
        if v == skip {
            return rec(g, lists, skip, v + 1, phi, visit);
        }
        for &c in &lists[v] {
            let clash = g
                .neighbors(v)
                .iter()
                .any(|&w| w < v && phi.get(w) == Some(c));
            if clash {
                continue;
            }
            phi.set(v, Some(c));
            if rec(g, lists, skip, v + 1, phi, visit) {
                return true;
            }
        }
        phi.set(v, None);
        false
    }
    let mut phi = Coloring::empty(g.n());
    rec(g, lists, skip, 0, &mut phi, visit)
}

fn lift(local: &Coloring, vertices: &VertexSet, n: usize) -> Coloring {
    let mut host = Coloring::empty(n);
    for (i, v) in vertices.iter().enumerate() {
        host.set(v, local.get(i));
    }
    host
}

/// Decides whether `t` is bad for `lists`; on success returns a witness
/// coloring of `F - v1` in host ids (other vertices uncolored).
pub fn is_bad_triple(
    g: &Graph,
    lists: &ListAssignment,
    t: &ProperTriple,
) -> Result<Option<Coloring>, CertError> {
    t.validate(g)?;
    if t.len() > MAX_BAD_TRIPLE_ORDER {
        return Err(CertError::GuardExceeded(format!(
            "|V(F)| = {} exceeds {MAX_BAD_TRIPLE_ORDER}",
            t.len()
        )));
    }
    let f = g.induced_subgraph(&t.vertices).graph;
    let fl = lists.restrict(&t.vertices);
    if solve_lists(&f, fl.lists()).is_colorable() {
        return Ok(None);
    }
    let root = t.vertices.index_of(t.root).expect("validated root");
    let mut witness = None;
    for_each_coloring_except(&f, fl.lists(), root, &mut |phi| {
        if charac_ranks(&f, fl.lists(), root, phi).as_deref() == Some(&t.ranks[..]) {
            witness = Some(phi.clone());
            true
        } else {
            false
        }
    });
    Ok(witness.map(|phi| lift(&phi, &t.vertices, g.n())))
}

/// A bad triple with its witness coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadTriple {
    pub triple: ProperTriple,
    /// Colors `F - v1` in host ids.
    pub witness: Coloring,
}

/// Finds a bad triple when `g` is not L-colorable: extracts a critical
/// subgraph and tries its vertices as roots in ascending order.
pub fn find_bad_triple(g: &Graph, lists: &ListAssignment) -> Result<Option<BadTriple>, CertError> {
    if solve_lists(g, lists.lists()).is_colorable() {
        return Ok(None);
    }
    let crit = extract_critical(g, lists)?;
    if crit.vertices.len() > MAX_BAD_TRIPLE_ORDER {
        return Err(CertError::GuardExceeded(format!(
            "critical subgraph on {} vertices exceeds {MAX_BAD_TRIPLE_ORDER}",
            crit.vertices.len()
        )));
    }
    let fl = crit.lists.lists();
    for root in 0..crit.graph.n() {
        let mut found = None;
        for_each_coloring_except(&crit.graph, fl, root, &mut |phi| {
            if let Some(ranks) = charac_ranks(&crit.graph, fl, root, phi) {
                found = Some((ranks, phi.clone()));
                true
            } else {
                false
            }
        });
        if let Some((ranks, phi)) = found {
            let triple = ProperTriple {
                vertices: crit.vertices.clone(),
                root: crit.vertices.as_slice()[root],
                ranks,
            };
            return Ok(Some(BadTriple {
                witness: lift(&phi, &crit.vertices, g.n()),
                triple,
            }));
        }
    }
    Ok(None)
}

fn fubini(n: usize) -> f64 {
    // Ordered set partitions: a(n) = Σ_{i=1..n} C(n,i) a(n-i).
    let mut a = vec![1.0f64; n + 1];
    for m in 1..=n {
        a[m] = (1..=m)
            .map(|i| crate::moments::binomial(m as u64, i as u64).value() * a[m - i])
            .sum();
    }
    a[n]
}

/// Upper estimate of the number of proper triples with at most `max_m`
/// vertices: per size, the smaller of `nΔ^{m-1}(m-1)!` and
/// `n·C(n-1,m-1)·(ordered partitions of m-1 vertices)`.
pub fn proper_triple_work_estimate(g: &Graph, max_m: usize) -> f64 {
    let n = g.n() as u64;
    let delta = g.max_degree() as f64;
    (1..=max_m.min(g.n()))
        .map(|m| {
            let lemma = LogValue::from_u64(n)
                * LogValue::from_f64(delta).powi(m as u64 - 1)
                * factorial(m as u64 - 1);
            let subsets = n as f64
                * crate::moments::binomial(n - 1, m as u64 - 1).value()
                * fubini(m - 1);
            lemma.value().min(subsets)
        })
        .sum()
}

/// Calls `visit` once for every proper triple of `g` with at most `max_m`
/// vertices.
pub fn for_each_proper_triple(
    g: &Graph,
    max_m: usize,
    visit: &mut dyn FnMut(&ProperTriple),
) -> Result<(), CertError> {
    let work = proper_triple_work_estimate(g, max_m);
    if work > TRIPLE_ENUMERATION_LIMIT {
        return Err(CertError::GuardExceeded(format!(
            "about {work:.3e} proper triples exceed {TRIPLE_ENUMERATION_LIMIT:.0e}"
        )));
    }
    for_each_connected_set(g, max_m, &mut |set| {
        let vs = VertexSet::from(set.to_vec());
        for root in vs.iter() {
            let mut ranks = vec![usize::MAX; vs.len()];
            ranks[vs.index_of(root).expect("root in set")] = 0;
            layerings(g, &vs, &mut ranks, &[root], 1, &mut |ranks| {
                visit(&ProperTriple {
                    vertices: vs.clone(),
                    root,
                    ranks: ranks.to_vec(),
                })
            });
        }
    });
    Ok(())
}

/// All proper triples with at most `max_m` vertices.
pub fn enumerate_proper_triples(g: &Graph, max_m: usize) -> Result<Vec<ProperTriple>, CertError> {
    let mut out = Vec::new();
    for_each_proper_triple(g, max_m, &mut |t| out.push(t.clone()))?;
    Ok(out)
}

/// `counts[m]` = number of proper triples with `m` vertices.
pub fn count_proper_triples(g: &Graph, max_m: usize) -> Result<Vec<u64>, CertError> {
    let mut counts = vec![0u64; max_m + 1];
    for_each_proper_triple(g, max_m, &mut |t| counts[t.len()] += 1)?;
    Ok(counts)
}

/// Assigns rank `rank` to a non-empty subset of the unranked vertices
/// adjacent to `prev`, recursively, until every vertex has a rank.
fn layerings(
    g: &Graph,
    vs: &VertexSet,
    ranks: &mut [usize],
    prev: &[usize],
    rank: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if ranks.iter().all(|&r| r != usize::MAX) {
        visit(ranks);
        return;
    }
    let candidates: Vec<usize> = vs
        .iter()
        .enumerate()
        .filter(|&(i, v)| {
            ranks[i] == usize::MAX && g.neighbors(v).iter().any(|w| prev.contains(w))
        })
        .map(|(_, v)| v)
        .collect();
    for mask in 1u32..(1 << candidates.len()) {
        let level: Vec<usize> = (0..candidates.len())
            .filter(|&b| mask >> b & 1 == 1)
            .map(|b| candidates[b])
            .collect();
        for &v in &level {
            ranks[vs.index_of(v).expect("candidate in set")] = rank;
        }
        layerings(g, vs, ranks, &level, rank + 1, visit);
        for &v in &level {
            ranks[vs.index_of(v).expect("candidate in set")] = usize::MAX;
        }
    }
}

/// Enumerates every connected vertex set of size `1..=max_m` exactly once
/// (ESU: sets are grown from their smallest vertex through exclusive
/// neighborhoods).
pub fn for_each_connected_set(g: &Graph, max_m: usize, visit: &mut dyn FnMut(&[usize])) {
    fn extend(
        g: &Graph,
        max_m: usize,
        start: usize,
        sub: &mut Vec<usize>,
        mut ext: Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        visit(sub);
        if sub.len() == max_m {
            return;
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in g.neighbors(w) {
                let exclusive = u > start
                    && !sub.contains(&u)
                    && u != w
                    && !next.contains(&u)
                    && !sub.iter().any(|&s| g.has_edge(s, u));
                if exclusive {
                    next.push(u);
                }
            }
            sub.push(w);
            extend(g, max_m, start, sub, next, visit);
            sub.pop();
        }
    }
    if max_m == 0 {
        return;
    }
    for v in 0..g.n() {
        let ext: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        extend(g, max_m, v, &mut vec![v], ext, visit);
    }
}
