//! Certificates of non-colorability: alternating paths and rank functions,
//! proper and bad triples, 2-bad pairs of ordered cycles and lollipops, and
//! tree-bad rooted proper trees.

mod alternating;
mod json;
mod pairs;
mod triples;
mod trees;

pub use alternating::{alternating_distances, induced_rank};
pub use json::Certificate;
pub use pairs::{
    alternating_chain, count_nonconsecutive, enumerate_ordered_seqs, find_2bad_pair, is_2bad,
    is_l_alternating, OrderedSeq, ProperPair, SeqKind, TwoBadWitness, PAIR_SEARCH_LIMIT,
};
pub use trees::{
    build_proper_trees, find_tree_bad, for_each_proper_tree, is_tree_bad, moore_bound,
    RootedProperTree, Side, TreeBad, TreeNode, TREE_ENUMERATION_LIMIT,
};
pub use triples::{
    count_proper_triples, enumerate_proper_triples, find_bad_triple, for_each_connected_set,
    for_each_proper_triple, is_bad_triple, proper_triple_work_estimate, BadTriple, ProperTriple,
    MAX_BAD_TRIPLE_ORDER, TRIPLE_ENUMERATION_LIMIT,
};

use thiserror::Error;

use crate::solver::SolverError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CertError {
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("vertex {vertex} is not reachable by an alternating path")]
    Unreachable { vertex: usize },
    #[error("not a proper triple: {0}")]
    NotProper(String),
    #[error("invalid ordered sequence: {0}")]
    InvalidSequence(String),
    #[error("vertex {vertex}: this certificate needs lists of exactly two colors")]
    ListSize { vertex: usize },
    #[error("graph has no cycle, so its girth is undefined")]
    Acyclic,
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
}
