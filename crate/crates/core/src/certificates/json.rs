//! JSON form of certificates, tagged by `kind`.

use serde::Serialize;

use crate::graph::VertexSet;
use crate::lists::Color;
use crate::solver::Coloring;

use super::{BadTriple, ProperPair, RootedProperTree, TreeBad, TwoBadWitness};

/// A certificate document; see `docs/certificates.md` for the schema.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A coloring from the lists.
    Coloring { colors: Vec<Color> },
    /// A connected induced subgraph that is not colorable while every
    /// vertex-deleted subgraph is.
    Critical { vertices: VertexSet },
    BadTriple {
        vertices: VertexSet,
        root: usize,
        ranks: Vec<usize>,
        /// Color of each vertex of `vertices`; `null` at the root.
        coloring: Vec<Option<Color>>,
    },
    TwoBadPair {
        h1: super::OrderedSeq,
        h2: super::OrderedSeq,
        chain1: Vec<Color>,
        chain2: Vec<Color>,
        nonconsecutive: usize,
    },
    TreeBad {
        tree: RootedProperTree,
        /// Color of each tree node in node order; `null` at the root.
        coloring: Vec<Option<Color>>,
    },
}

fn restrict(phi: &Coloring, vertices: impl Iterator<Item = usize>) -> Vec<Option<Color>> {
    vertices.map(|v| phi.get(v)).collect()
}

impl Certificate {
    pub fn from_bad_triple(b: &BadTriple) -> Self {
        Certificate::BadTriple {
            vertices: b.triple.vertices.clone(),
            root: b.triple.root,
            ranks: b.triple.ranks.clone(),
            coloring: restrict(&b.witness, b.triple.vertices.iter()),
        }
    }

    pub fn from_pair(pair: &ProperPair, witness: &TwoBadWitness) -> Self {
        Certificate::TwoBadPair {
            h1: pair.h1.clone(),
            h2: pair.h2.clone(),
            chain1: witness.chain1.clone(),
            chain2: witness.chain2.clone(),
            nonconsecutive: super::count_nonconsecutive(pair),
        }
    }

    pub fn from_tree_bad(t: &TreeBad) -> Self {
        Certificate::TreeBad {
            coloring: restrict(&t.witness, t.tree.nodes.iter().map(|n| n.vertex)),
            tree: t.tree.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Coloring { .. } => "coloring",
            Certificate::Critical { .. } => "critical",
            Certificate::BadTriple { .. } => "bad_triple",
            Certificate::TwoBadPair { .. } => "two_bad_pair",
            Certificate::TreeBad { .. } => "tree_bad",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::find_bad_triple;
    use crate::graph::complete;
    use crate::lists::ListAssignment;

    #[test]
    fn tagged_by_kind() {
        let g = complete(3);
        let l = ListAssignment::uniform(3, &[1, 2], 2).unwrap();
        let b = find_bad_triple(&g, &l).unwrap().unwrap();
        let c = Certificate::from_bad_triple(&b);
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["kind"], "bad_triple");
        assert_eq!(v["vertices"], serde_json::json!([0, 1, 2]));
        assert_eq!(v["root"], 0);
        assert_eq!(v["coloring"][0], serde_json::Value::Null);
        assert_eq!(c.kind(), "bad_triple");
    }
}
