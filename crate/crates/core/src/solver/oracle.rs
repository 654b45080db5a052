//! Exhaustive colorability check, independent of the search code.

use crate::graph::Graph;
use crate::lists::Color;

use super::SolverError;

/// Largest product of list sizes scanned by [`brute_force_colorable`].
pub const BRUTE_FORCE_LIMIT: f64 = 1e7;

/// Scans every choice in the product of the lists.
pub fn brute_force_colorable(g: &Graph, lists: &[Vec<Color>]) -> Result<bool, SolverError> {
    if lists.len() != g.n() {
        return Err(SolverError::SizeMismatch {
            lists: lists.len(),
            n: g.n(),
        });
    }
    let size: f64 = lists.iter().map(|l| l.len() as f64).product();
    if size > BRUTE_FORCE_LIMIT {
        return Err(SolverError::GuardExceeded {
            size,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if lists.iter().any(Vec::is_empty) {
        return Ok(false);
    }
    let n = g.n();
    let mut digits = vec![0usize; n];
    loop {
        let proper = g
            .edges()
            .iter()
            .all(|&(u, v)| lists[u][digits[u]] != lists[v][digits[v]]);
        if proper {
            return Ok(true);
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == n {
                return Ok(false);
            }
            digits[i] += 1;
            if digits[i] < lists[i].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    #[test]
    fn basics() {
        assert!(brute_force_colorable(&Graph::empty(0), &[]).unwrap());
        let k3 = complete(3);
        let same = vec![vec![1, 2]; 3];
        assert!(!brute_force_colorable(&k3, &same).unwrap());
        assert!(brute_force_colorable(&k3, &[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap());
        let big = vec![vec![1, 2, 3, 4]; 12];
        assert!(matches!(
            brute_force_colorable(&Graph::empty(12), &big),
            Err(SolverError::GuardExceeded { .. })
        ));
    }
}
