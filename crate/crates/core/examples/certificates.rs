//! Finds the three kinds of failure certificate on an uncolorable instance
//! and checks each one with its independent validator.
//!
//! cargo run --example certificates

use listcolor::certificates::{
    find_2bad_pair, find_bad_triple, find_tree_bad, is_2bad, is_bad_triple, is_tree_bad, moore_bound, Certificate,
};
use listcolor::graph;
use listcolor::lists::ListAssignment;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = graph::cycle(5)?;
    let lists = ListAssignment::uniform(5, &[1, 2], 2)?;

    let triple = find_bad_triple(&g, &lists)?.expect("uncolorable instances have a bad triple");
    assert!(is_bad_triple(&g, &lists, &triple.triple)?.is_some());
    println!("{}", Certificate::from_bad_triple(&triple).to_json());

    let pair = find_2bad_pair(&g, &lists)?.expect("2-lists: a 2-bad pair exists");
    let witness = is_2bad(&g, &pair, &lists)?.expect("found pairs validate");
    println!("{}", Certificate::from_pair(&pair, &witness).to_json());

    let tree = find_tree_bad(&g, &lists)?.expect("girth 5: a tree-bad tree exists");
    assert!(is_tree_bad(&g, &tree.tree, &lists).is_some());
    assert_eq!(tree.tree.len() as u64, moore_bound(2, 5));
    println!("{}", Certificate::from_tree_bad(&tree).to_json());

    // Even girth: the tree gets a semiroot.
    let c6 = graph::cycle(6)?;
    let l6 = ListAssignment::new(2, 2, vec![vec![1, 2]; 6])?;
    if let Some(t) = find_tree_bad(&c6, &l6)? {
        println!("C6: even tree = {}, semiroot {:?}", t.tree.is_even(), t.tree.semiroot());
    } else {
        println!("C6 with lists {{1,2}} is colorable");
    }
    Ok(())
}
