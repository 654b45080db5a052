//! Exact list-colorability decision.
//!
//! Backtracking over each connected component separately, with
//! minimum-remaining-values branching (ties by vertex id) and forced-move
//! propagation. Domains are bitmasks over list positions.
//!
//! One extra pruning rule keeps 2-list instances polynomial: when a search
//! node fails while every unassigned vertex of the component still has its
//! whole list available, the assigned vertices never interacted with the rest,
//! so the unassigned vertices alone are uncolorable and so is the component.

mod critical;
mod oracle;

pub use critical::{extract_critical, CriticalSubgraph};
pub use oracle::{brute_force_colorable, BRUTE_FORCE_LIMIT};

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::lists::{Color, ListAssignment, MAX_LIST_LEN};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SolverError {
    #[error("instance is L-colorable; no critical subgraph exists")]
    Colorable,
    #[error("search space of {size} exceeds the limit {limit}")]
    GuardExceeded { size: f64, limit: f64 },
    #[error("{lists} lists for a graph on {n} vertices")]
    SizeMismatch { lists: usize, n: usize },
}

/// A (possibly partial) assignment of colors to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(Vec<Option<Color>>);

impl Coloring {
    /// Nothing colored.
    pub fn empty(n: usize) -> Self {
        Coloring(vec![None; n])
    }

    pub fn total(colors: Vec<Color>) -> Self {
        Coloring(colors.into_iter().map(Some).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, c: Option<Color>) {
        self.0[v] = c;
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.0
    }
}

/// True iff colored vertices respect their lists and no edge joins two
/// vertices of the same color. Uncolored vertices are ignored.
pub fn verify_partial_coloring(g: &Graph, lists: &[Vec<Color>], phi: &Coloring) -> bool {
    if phi.len() != g.n() || lists.len() != g.n() {
        return false;
    }
    let in_lists = lists
        .iter()
        .enumerate()
        .all(|(v, list)| phi.get(v).is_none_or(|c| list.contains(&c)));
    in_lists
        && g.edges().iter().all(|&(u, v)| match (phi.get(u), phi.get(v)) {
        (Some(a), Some(b)) => a != b,
        _ => true,
    })
}

/// True iff `phi` is a total L-coloring of `g`.
pub fn verify_coloring(g: &Graph, lists: &ListAssignment, phi: &Coloring) -> bool {
    phi.is_total() && verify_partial_coloring(g, lists.lists(), phi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Colorable,
    Uncolorable,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Search nodes visited, one per branching decision.
    pub nodes: u64,
    /// Domain reductions performed by propagation.
    pub propagations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: Status,
    /// A total coloring when colorable.
    pub witness: Option<Coloring>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_colorable(&self) -> bool {
        self.status == Status::Colorable
    }
}

/// Limits for [`solve_with_budget`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

/// Returned when a [`Budget`] runs out before the search finishes.
#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
#[error("search budget exhausted after {} nodes", stats.nodes)]
pub struct BudgetExhausted {
    pub stats: SolveStats,
}

/// Decides whether `g` is L-colorable.
pub fn solve(g: &Graph, lists: &ListAssignment) -> SolveResult {
    solve_lists(g, lists.lists())
}

/// [`solve`] for arbitrary per-vertex lists (any sizes up to
/// [`MAX_LIST_LEN`], duplicates ignored).
pub fn solve_lists(g: &Graph, lists: &[Vec<Color>]) -> SolveResult {
    solve_lists_with_budget(g, lists, Budget::default()).expect("unbounded search always finishes")
}

pub fn solve_with_budget(
    g: &Graph,
    lists: &ListAssignment,
    budget: Budget,
) -> Result<SolveResult, BudgetExhausted> {
    solve_lists_with_budget(g, lists.lists(), budget)
}

pub fn solve_lists_with_budget(
    g: &Graph,
    lists: &[Vec<Color>],
    budget: Budget,
) -> Result<SolveResult, BudgetExhausted> {
    assert_eq!(lists.len(), g.n(), "one list per vertex required");
    let mut search = Search::new(g, lists, budget);
    for comp in g.components() {
        match search.run_component(comp.as_slice()) {
            Outcome::Sat => {}
            Outcome::Unsat | Outcome::Refuted => {
                return Ok(SolveResult {
                    status: Status::Uncolorable,
                    witness: None,
                    stats: search.stats,
                })
            }
            Outcome::Aborted => {
                return Err(BudgetExhausted {
                    stats: search.stats,
                })
            }
        }
    }
    let colors = (0..g.n())
        .map(|v| search.lists[v][search.assigned[v].expect("all vertices assigned") as usize])
        .collect();
    Ok(SolveResult {
        status: Status::Colorable,
        witness: Some(Coloring::total(colors)),
        stats: search.stats,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Sat,
    /// No coloring extends the current partial assignment.
    Unsat,
    /// The component has no coloring at all.
    Refuted,
    Aborted,
}

enum TrailEntry {
    Domain(usize, u64),
    Assigned(usize),
}

struct Search<'a> {
    g: &'a Graph,
    lists: Vec<Vec<Color>>,
    full: Vec<u64>,
    domain: Vec<u64>,
    assigned: Vec<Option<u8>>,
    trail: Vec<TrailEntry>,
    queue: Vec<usize>,
    stats: SolveStats,
    budget: Budget,
}

fn full_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, lists: &[Vec<Color>], budget: Budget) -> Self {
        let lists: Vec<Vec<Color>> = lists
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.sort_unstable();
                l.dedup();
                assert!(l.len() <= MAX_LIST_LEN, "list longer than {MAX_LIST_LEN}");
                l
            })
            .collect();
        let full: Vec<u64> = lists.iter().map(|l| full_mask(l.len())).collect();
        Search {
            g,
            domain: full.clone(),
            full,
            lists,
            assigned: vec![None; g.n()],
            trail: Vec::new(),
            queue: Vec::new(),
            stats: SolveStats::default(),
            budget,
        }
    }

    fn run_component(&mut self, comp: &[usize]) -> Outcome {
        self.queue.clear();
        for &v in comp {
            match self.domain[v].count_ones() {
                0 => return Outcome::Refuted,
                1 => self.queue.push(v),
                _ => {}
            }
        }
        if !self.propagate() {
            // Forced by the original lists alone.
            return Outcome::Refuted;
        }
        match self.search(comp) {
            Outcome::Unsat => Outcome::Refuted,
            other => other,
        }
    }

    fn out_of_budget(&self) -> bool {
        if let Some(max) = self.budget.max_nodes {
            if self.stats.nodes > max {
                return true;
            }
        }
        if let Some(deadline) = self.budget.deadline {
            if self.stats.nodes.is_multiple_of(1024) && Instant::now() >= deadline {
                return true;
            }
        }
        false
    }

    fn search(&mut self, comp: &[usize]) -> Outcome {
        self.stats.nodes += 1;
        if self.out_of_budget() {
            return Outcome::Aborted;
        }
        let mut pick: Option<(u32, usize)> = None;
        let mut untouched = true;
        for &v in comp {
            if self.assigned[v].is_some() {
                continue;
            }
            let d = self.domain[v];
            untouched &= d == self.full[v];
            let size = d.count_ones();
            if pick.is_none_or(|(best, _)| size < best) {
                pick = Some((size, v));
            }
        }
        let Some((_, v)) = pick else {
            return Outcome::Sat;
        };
        let mut dom = self.domain[v];
        while dom != 0 {
            let pos = dom.trailing_zeros() as u8;
            dom &= dom - 1;
            let mark = self.trail.len();
            if self.assign(v, pos) && self.propagate() {
                match self.search(comp) {
                    Outcome::Unsat => {}
                    other => return other,
                }
            }
            self.undo(mark);
        }
        if untouched {
            Outcome::Refuted
        } else {
            Outcome::Unsat
        }
    }

    /// Assigns list position `pos` to `v` and prunes neighbor domains.
    /// Returns false on a wipe-out.
    fn assign(&mut self, v: usize, pos: u8) -> bool {
        self.trail.push(TrailEntry::Assigned(v));
        self.trail.push(TrailEntry::Domain(v, self.domain[v]));
        self.assigned[v] = Some(pos);
        self.domain[v] = 1 << pos;
        let color = self.lists[v][pos as usize];
        for &w in self.g.neighbors(v) {
            if self.assigned[w].is_some() {
                continue;
            }
            let Ok(pw) = self.lists[w].binary_search(&color) else {
                continue;
            };
            let bit = 1u64 << pw;
            let d = self.domain[w];
            if d & bit == 0 {
                continue;
            }
            self.trail.push(TrailEntry::Domain(w, d));
            self.domain[w] = d & !bit;
            self.stats.propagations += 1;
            match self.domain[w].count_ones() {
                0 => return false,
                1 => self.queue.push(w),
                _ => {}
            }
        }
        true
    }

    /// Assigns queued single-value vertices until a fixpoint.
    fn propagate(&mut self) -> bool {
        while let Some(w) = self.queue.pop() {
            if self.assigned[w].is_some() {
                continue;
            }
            let pos = self.domain[w].trailing_zeros() as u8;
            if !self.assign(w, pos) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                TrailEntry::Domain(v, d) => self.domain[v] = d,
                TrailEntry::Assigned(v) => self.assigned[v] = None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    fn uniform(n: usize, list: &[Color], sigma: u32) -> ListAssignment {
        ListAssignment::uniform(n, list, sigma).unwrap()
    }

    #[test]
    fn cycles_with_two_colors() {
        let c5 = cycle(5).unwrap();
        let r = solve(&c5, &uniform(5, &[1, 2], 2));
        assert_eq!(r.status, Status::Uncolorable);
        assert!(r.witness.is_none());

        let c4 = cycle(4).unwrap();
        let l = uniform(4, &[1, 2], 2);
        let r = solve(&c4, &l);
        assert!(r.is_colorable());
        assert!(verify_coloring(&c4, &l, r.witness.as_ref().unwrap()));
    }

    #[test]
    fn triangle_with_distinct_lists() {
        let k3 = complete(3);
        let l = ListAssignment::new(3, 2, vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        let r = solve(&k3, &l);
        assert!(r.is_colorable());
        assert!(verify_coloring(&k3, &l, r.witness.as_ref().unwrap()));
    }

    #[test]
    fn verify_rejects_bad_colorings() {
        let p = path(2);
        let l = uniform(2, &[1, 2], 3);
        assert!(verify_coloring(&p, &l, &Coloring::total(vec![1, 2])));
        assert!(!verify_coloring(&p, &l, &Coloring::total(vec![1, 1])));
        assert!(!verify_coloring(&p, &l, &Coloring::total(vec![1, 3])));
        let mut partial = Coloring::empty(2);
        partial.set(0, Some(1));
        assert!(!verify_coloring(&p, &l, &partial));
        assert!(verify_partial_coloring(&p, l.lists(), &partial));
    }

    #[test]
    fn heterogeneous_lists_and_empty_graph() {
        let k3 = complete(3);
        assert!(!solve_lists(&k3, &[vec![1], vec![1, 2], vec![2]]).is_colorable());
        assert!(solve_lists(&k3, &[vec![1], vec![1, 2, 3], vec![2]]).is_colorable());
        assert!(!solve_lists(&path(1), &[vec![]]).is_colorable());
        assert!(solve_lists(&Graph::empty(0), &[]).is_colorable());
    }

    #[test]
    fn budget_aborts() {
        // K_8 with identical 7-lists needs exhaustive search.
        let g = complete(8);
        let l = uniform(8, &[1, 2, 3, 4, 5, 6, 7], 7);
        let budget = Budget {
            max_nodes: Some(10),
            deadline: None,
        };
        assert!(solve_with_budget(&g, &l, budget).is_err());
        assert!(!solve(&g, &l).is_colorable());
    }

    #[test]
    fn two_lists_stay_linear() {
        // Long odd cycle with identical 2-lists: refuted without backtracking.
        let g = cycle(2001).unwrap();
        let r = solve(&g, &uniform(2001, &[1, 2], 2));
        assert!(!r.is_colorable());
        assert!(r.stats.nodes <= 3, "nodes = {}", r.stats.nodes);
    }
}
