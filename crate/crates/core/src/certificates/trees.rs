//! Rooted k-proper trees in graphs of girth g and the tree-bad condition.
//!
//! For odd `g` the tree is rooted at `v`: `v` has `k` children, every vertex
//! at depth `1..=(g-3)/2` has `k - 1` children, and leaves sit at depth
//! `(g-1)/2`. For even `g` the root `v` has a semiroot neighbor `u`; `v` and
//! `u` each get `k - 1` further children and both sides grow like odd trees
//! down to depth `(g-2)/2` from their own top vertex. Either way the tree has
//! exactly [`moore_bound`]`(k, g)` vertices.

use crate::graph::Graph;
use crate::lists::{Color, ListAssignment};
use crate::solver::Coloring;

use super::CertError;

/// Limit on the partial trees visited by one enumeration.
pub const TREE_ENUMERATION_LIMIT: u64 = 10_000_000;

/// Minimum order of a graph with minimum degree `k` and girth `g`:
/// `1 + k Σ_{i<(g-1)/2} (k-1)^i` for odd `g`, `2 Σ_{i<g/2} (k-1)^i` for even.
pub fn moore_bound(k: u64, g: u64) -> u64 {
    assert!(k >= 1 && g >= 3, "moore_bound needs k >= 1, g >= 3");
    let geometric = |terms: u64| (0..terms).map(|i| (k - 1).pow(i as u32)).sum::<u64>();
    if g % 2 == 1 {
        1 + k * geometric((g - 1) / 2)
    } else {
        2 * geometric(g / 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// The root's side.
    Root,
    /// The semiroot's side (even girth only).
    Semiroot,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct TreeNode {
    pub vertex: usize,
    /// Index of the parent node; `None` for the root.
    pub parent: Option<usize>,
    pub side: Side,
    /// Distance from the top vertex of its side (root or semiroot).
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct RootedProperTree {
    pub girth: usize,
    pub k: usize,
    /// `nodes[0]` is the root; parents precede their children.
    pub nodes: Vec<TreeNode>,
}

impl RootedProperTree {
    pub fn root(&self) -> usize {
        self.nodes[0].vertex
    }

    pub fn semiroot(&self) -> Option<usize> {
        self.nodes.iter().find(|n| n.side == Side::Semiroot && n.depth == 0).map(|n| n.vertex)
    }

    pub fn is_even(&self) -> bool {
        self.girth.is_multiple_of(2)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.vertex).collect()
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&j| self.nodes[j].parent == Some(i)).collect()
    }

    /// Whether node `i`'s children must carry exactly the colors of its list
    /// other than its own. The semiroot is exempt when `g = 4`.
    fn conditioned(&self, i: usize, has_children: bool) -> bool {
        let n = &self.nodes[i];
        has_children && !(n.side == Side::Semiroot && n.depth == 0 && self.girth == 4)
    }
}

fn side_depth_limit(girth: usize) -> usize {
    if girth % 2 == 1 {
        (girth - 1) / 2
    } else {
        (girth - 2) / 2
    }
}

struct TreeBuilder<'a> {
    g: &'a Graph,
    girth: usize,
    k: usize,
    in_tree: Vec<bool>,
    nodes: Vec<TreeNode>,
    steps: u64,
}

impl TreeBuilder<'_> {
    fn children_needed(&self, i: usize) -> usize {
        let n = &self.nodes[i];
        if n.depth >= side_depth_limit(self.girth) {
            return 0;
        }
        if i == 0 && self.girth % 2 == 1 {
            self.k
        } else {
            self.k - 1
        }
    }

    /// Gives children to node `i` and all later nodes.
    fn grow(
        &mut self,
        i: usize,
        visit: &mut dyn FnMut(&RootedProperTree) -> bool,
    ) -> Result<bool, CertError> {
        self.steps += 1;
        if self.steps > TREE_ENUMERATION_LIMIT {
            return Err(CertError::GuardExceeded(format!(
                "proper tree enumeration exceeded {TREE_ENUMERATION_LIMIT} steps"
            )));
        }
        if i == self.nodes.len() {
            return Ok(visit(&RootedProperTree {
                girth: self.girth,
                k: self.k,
                nodes: self.nodes.clone(),
            }));
        }
        let need = self.children_needed(i);
        if need == 0 {
            return self.grow(i + 1, visit);
        }
        let x = self.nodes[i].vertex;
        let candidates: Vec<usize> = self
            .g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&y| !self.in_tree[y])
            .collect();
        if candidates.len() < need {
            return Ok(false);
        }
        let mut pick: Vec<usize> = (0..need).collect();
        loop {
            let (side, depth) = (self.nodes[i].side, self.nodes[i].depth + 1);
            for &p in &pick {
                let y = candidates[p];
                self.in_tree[y] = true;
                self.nodes.push(TreeNode {
                    vertex: y,
                    parent: Some(i),
                    side,
                    depth,
                });
            }
            let stop = self.grow(i + 1, visit)?;
            for _ in 0..need {
                let node = self.nodes.pop().expect("pushed child");
                self.in_tree[node.vertex] = false;
            }
            if stop {
                return Ok(true);
            }
            if !next_combination(&mut pick, candidates.len()) {
                return Ok(false);
            }
        }
    }
}

/// Advances `pick` to the next `pick.len()`-combination of `0..n` in
/// lexicographic order.
fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let r = pick.len();
    for i in (0..r).rev() {
        if pick[i] < n - r + i {
            pick[i] += 1;
            for j in i + 1..r {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `visit` on every rooted k-proper tree of `g` at root `v`, for the
/// given girth, until it returns `true`. Returns whether it was stopped.
pub fn for_each_proper_tree(
    g: &Graph,
    girth: usize,
    k: usize,
    v: usize,
    visit: &mut dyn FnMut(&RootedProperTree) -> bool,
) -> Result<bool, CertError> {
    if k < 2 || girth < 3 {
        return Err(CertError::GuardExceeded(format!(
            "proper trees need k >= 2 and girth >= 3, got k={k}, girth={girth}"
        )));
    }
    let root = TreeNode {
        vertex: v,
        parent: None,
        side: Side::Root,
        depth: 0,
    };
    let mut b = TreeBuilder {
        g,
        girth,
        k,
        in_tree: vec![false; g.n()],
        nodes: vec![root],
        steps: 0,
    };
    b.in_tree[v] = true;
    if girth % 2 == 1 {
        return b.grow(0, visit);
    }
    for &u in g.neighbors(v) {
        b.in_tree[u] = true;
        b.nodes.push(TreeNode {
            vertex: u,
            parent: Some(0),
            side: Side::Semiroot,
            depth: 0,
        });
        let stop = b.grow(0, visit)?;
        b.nodes.pop();
        b.in_tree[u] = false;
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All rooted k-proper trees at `v`, using the girth of `g`.
pub fn build_proper_trees(g: &Graph, k: usize, v: usize) -> Result<Vec<RootedProperTree>, CertError> {
    let girth = g.girth().ok_or(CertError::Acyclic)?;
    let mut out = Vec::new();
    for_each_proper_tree(g, girth, k, v, &mut |t| {
        out.push(t.clone());
        false
    })?;
    Ok(out)
}

/// Finds an assignment of distinct `targets` to `children` such that each
/// child can take its target; `ok(child_pos, color)`.
fn match_children(
    children: usize,
    targets: &[Color],
    ok: &dyn Fn(usize, Color) -> bool,
) -> Option<Vec<Color>> {
    fn rec(
        pos: usize,
        children: usize,
        targets: &[Color],
        used: &mut [bool],
        chosen: &mut Vec<Color>,
        ok: &dyn Fn(usize, Color) -> bool,
    ) -> bool {
        if pos == children {
            return true;
        }
        for (t, &c) in targets.iter().enumerate() {
            if used[t] || !ok(pos, c) {
                continue;
            }
            used[t] = true;
            chosen.push(c);
            if rec(pos + 1, children, targets, used, chosen, ok) {
                return true;
            }
            chosen.pop();
            used[t] = false;
        }
        false
    }
    if children != targets.len() {
        return None;
    }
    let mut used = vec![false; targets.len()];
    let mut chosen = Vec::new();
    rec(0, children, targets, &mut used, &mut chosen, ok).then_some(chosen)
}

/// Decides whether `tree` is tree-bad: some coloring of `T - v` (proper on
/// tree edges, from the lists) gives the root's children exactly `L(v)` and
/// every conditioned internal vertex's children exactly its other colors.
/// Returns the witness in host ids.
pub fn is_tree_bad(
    g: &Graph,
    tree: &RootedProperTree,
    lists: &ListAssignment,
) -> Option<Coloring> {
    let m = tree.nodes.len();
    let children: Vec<Vec<usize>> = (0..m).map(|i| tree.children(i)).collect();
    let list = |i: usize| lists.list(tree.nodes[i].vertex);
    // feasible[i][c_pos]: subtree of node i can be colored with node i taking
    // the c_pos-th color of its list.
    let mut feasible: Vec<Vec<bool>> = vec![Vec::new(); m];
    for i in (1..m).rev() {
        let ch = &children[i];
        let f: Vec<bool> = list(i)
            .iter()
            .map(|&c| feasible_with(tree, i, c, ch, &feasible, lists))
            .collect();
        feasible[i] = f;
    }
    let root_ok = |pos: usize, c: Color| can_take(&feasible, lists, tree, children[0][pos], c);
    let root_colors = match_children(children[0].len(), list(0), &root_ok)?;

    let mut phi = Coloring::empty(g.n());
    let mut stack: Vec<(usize, Color)> = children[0].iter().copied().zip(root_colors).collect();
    while let Some((i, c)) = stack.pop() {
        phi.set(tree.nodes[i].vertex, Some(c));
        let ch = &children[i];
        if ch.is_empty() {
            continue;
        }
        if tree.conditioned(i, true) {
            let targets: Vec<Color> = list(i).iter().copied().filter(|&t| t != c).collect();
            let ok = |pos: usize, t: Color| can_take(&feasible, lists, tree, ch[pos], t);
            let colors = match_children(ch.len(), &targets, &ok).expect("feasibility checked");
            stack.extend(ch.iter().copied().zip(colors));
        } else {
            for &y in ch {
                let t = lists
                    .list(tree.nodes[y].vertex)
                    .iter()
                    .copied()
                    .find(|&t| t != c && can_take(&feasible, lists, tree, y, t))
                    .expect("feasibility checked");
                stack.push((y, t));
            }
        }
    }
    Some(phi)
}

fn can_take(
    feasible: &[Vec<bool>],
    lists: &ListAssignment,
    tree: &RootedProperTree,
    i: usize,
    c: Color,
) -> bool {
    lists
        .list(tree.nodes[i].vertex)
        .iter()
        .position(|&x| x == c)
        .is_some_and(|p| feasible[i][p])
}

fn feasible_with(
    tree: &RootedProperTree,
    i: usize,
    c: Color,
    ch: &[usize],
    feasible: &[Vec<bool>],
    lists: &ListAssignment,
) -> bool {
    if ch.is_empty() {
        return true;
    }
    if tree.conditioned(i, true) {
        let targets: Vec<Color> = lists
            .list(tree.nodes[i].vertex)
            .iter()
            .copied()
            .filter(|&t| t != c)
            .collect();
        let ok = |pos: usize, t: Color| can_take(feasible, lists, tree, ch[pos], t);
        match_children(ch.len(), &targets, &ok).is_some()
    } else {
        ch.iter().all(|&y| {
            lists
                .list(tree.nodes[y].vertex)
                .iter()
                .any(|&t| t != c && can_take(feasible, lists, tree, y, t))
        })
    }
}

/// A tree-bad tree with its witness coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeBad {
    pub tree: RootedProperTree,
    pub witness: Coloring,
}

/// First tree-bad rooted k-proper tree over roots in ascending order, where
/// `k` is the list size. `None` for acyclic graphs.
pub fn find_tree_bad(g: &Graph, lists: &ListAssignment) -> Result<Option<TreeBad>, CertError> {
    let Some(girth) = g.girth() else {
        return Ok(None);
    };
    let k = lists.k() as usize;
    let mut found = None;
    for v in 0..g.n() {
        for_each_proper_tree(g, girth, k, v, &mut |t| {
            if let Some(witness) = is_tree_bad(g, t, lists) {
                found = Some(TreeBad {
                    tree: t.clone(),
                    witness,
                });
                true
            } else {
                false
            }
        })?;
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}
