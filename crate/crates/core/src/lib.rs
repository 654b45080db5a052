//! List coloring of graphs from random color lists.

pub mod certificates;
pub mod cli;
pub mod graph;
pub mod harness;
pub mod lists;
pub mod moments;
pub mod solver;
