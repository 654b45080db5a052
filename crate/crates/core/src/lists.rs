//! Color lists, the uniform random `(k, σ)` list sampler and the list text
//! format.
//!
//! Colors are positive integers `1..=σ`. Every list of a [`ListAssignment`]
//! holds exactly `k` distinct colors in ascending order.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::moments::ln_binomial;

pub type Color = u32;

/// Solver domains are bitmasks over list positions.
pub const MAX_LIST_LEN: usize = 64;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ListError {
    #[error("invalid parameters: k={k}, sigma={sigma} (need 1 <= k <= sigma, k <= {MAX_LIST_LEN})")]
    InvalidParameters { k: u32, sigma: u32 },
    #[error("vertex {vertex}: expected {expected} colors, found {found}")]
    WrongListSize {
        vertex: usize,
        expected: u32,
        found: usize,
    },
    #[error("vertex {vertex}: color {color} outside 1..={sigma}")]
    ColorOutOfRange {
        vertex: usize,
        color: Color,
        sigma: u32,
    },
    #[error("vertex {vertex}: repeated color {color}")]
    RepeatedColor { vertex: usize, color: Color },
    #[error("vertex {vertex}: missing list")]
    MissingVertex { vertex: usize },
    #[error("vertex {vertex}: listed twice")]
    DuplicateVertex { vertex: usize },
    #[error("vertex {vertex} out of range (n={n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A `k`-list assignment over the color universe `1..=σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    sigma: u32,
    k: u32,
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    /// Validates and normalizes (sorts) the given lists.
    pub fn new(sigma: u32, k: u32, lists: Vec<Vec<Color>>) -> Result<Self, ListError> {
        check_params(k, sigma)?;
        let mut lists = lists;
        for (vertex, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if list.len() != k as usize {
                return Err(ListError::WrongListSize {
                    vertex,
                    expected: k,
                    found: list.len(),
                });
            }
            if let Some(&color) = list.iter().find(|&&c| c == 0 || c > sigma) {
                return Err(ListError::ColorOutOfRange {
                    vertex,
                    color,
                    sigma,
                });
            }
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(ListError::RepeatedColor {
                    vertex,
                    color: w[0],
                });
            }
        }
        Ok(ListAssignment { sigma, k, lists })
    }

    /// Every vertex gets the same list.
    pub fn uniform(n: usize, list: &[Color], sigma: u32) -> Result<Self, ListError> {
        ListAssignment::new(sigma, list.len() as u32, vec![list.to_vec(); n])
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    /// Lists of the vertices in `vs`, relabeled like
    /// [`Graph::induced_subgraph`].
    pub fn restrict(&self, vs: &VertexSet) -> ListAssignment {
        ListAssignment {
            sigma: self.sigma,
            k: self.k,
            lists: vs.iter().map(|v| self.lists[v].clone()).collect(),
        }
    }
}

fn check_params(k: u32, sigma: u32) -> Result<(), ListError> {
    if k == 0 || k > sigma || k as usize > MAX_LIST_LEN {
        return Err(ListError::InvalidParameters { k, sigma });
    }
    Ok(())
}

/// Identifies one trial's random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SeedSpec {
    pub base_seed: u64,
    pub trial_index: u64,
}

impl SeedSpec {
    pub fn new(base_seed: u64, trial_index: u64) -> Self {
        SeedSpec {
            base_seed,
            trial_index,
        }
    }

    /// The 64-bit seed of this trial's generator.
    pub fn derived_seed(&self) -> u64 {
        splitmix64(splitmix64(self.base_seed) ^ splitmix64(self.trial_index ^ 0xA076_1D64_78BD_642F))
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.derived_seed())
    }
}

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws lists for `n` vertices independently and uniformly from the
/// `k`-subsets of `1..=σ`.
pub fn sample_lists<R: Rng + ?Sized>(
    n: usize,
    k: u32,
    sigma: u32,
    rng: &mut R,
) -> Result<ListAssignment, ListError> {
    check_params(k, sigma)?;
    let mut pool: Vec<Color> = (1..=sigma).collect();
    let mut lists = Vec::with_capacity(n);
    for _ in 0..n {
        lists.push(sample_subset(&mut pool, k as usize, rng));
    }
    Ok(ListAssignment { sigma, k, lists })
}

/// Partial Fisher–Yates: the first `k` slots become a uniform random
/// `k`-subset (as an ordered tuple) regardless of the pool's current order.
fn sample_subset<R: Rng + ?Sized>(pool: &mut [Color], k: usize, rng: &mut R) -> Vec<Color> {
    let len = pool.len();
    for i in 0..k {
        let j = rng.random_range(i..len);
        pool.swap(i, j);
    }
    let mut list = pool[..k].to_vec();
    list.sort_unstable();
    list
}

/// Random `(k, σ)`-list assignment for `g`, determined by `seed`.
pub fn sample_assignment(
    g: &Graph,
    k: u32,
    sigma: u32,
    seed: SeedSpec,
) -> Result<ListAssignment, ListError> {
    sample_lists(g.n(), k, sigma, &mut seed.rng())
}

/// Probability that `clique_size` independent uniform `k`-subsets of
/// `1..=σ` all coincide: `C(σ,k)^-(clique_size-1)`.
pub fn prob_identical_lists(clique_size: u32, k: u32, sigma: u32) -> f64 {
    assert!(clique_size >= 1 && k <= sigma, "invalid parameters");
    (-(f64::from(clique_size) - 1.0) * ln_binomial(u64::from(sigma), u64::from(k))).exp()
}

/// Parses the list format:
///
/// ```text
/// sigma=<σ> k=<k>
/// <vertex>: c1 c2 ... ck
/// ```
pub fn read_lists(text: &str, graph: &Graph) -> Result<ListAssignment, ListError> {
    let n = graph.n();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ListError::Parse {
        line: 1,
        message: "missing `sigma=<σ> k=<k>` header".into(),
    })?;
    let header_err = || ListError::Parse {
        line: hline,
        message: format!("expected `sigma=<σ> k=<k>`, found `{header}`"),
    };
    let (mut sigma, mut k) = (None, None);
    for field in header.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(header_err)?;
        let value: u32 = value.parse().map_err(|_| header_err())?;
        match key {
            "sigma" => sigma = Some(value),
            "k" => k = Some(value),
            _ => return Err(header_err()),
        }
    }
    let (sigma, k) = (sigma.ok_or_else(header_err)?, k.ok_or_else(header_err)?);
    check_params(k, sigma)?;

    let mut lists: Vec<Option<Vec<Color>>> = vec![None; n];
    for (line, content) in lines {
        let parse_err = |message: String| ListError::Parse { line, message };
        let (vertex, colors) = content
            .split_once(':')
            .ok_or_else(|| parse_err(format!("expected `<vertex>: <colors>`, found `{content}`")))?;
        let vertex: usize = vertex
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("invalid vertex id `{}`", vertex.trim())))?;
        if vertex >= n {
            return Err(ListError::VertexOutOfRange { vertex, n });
        }
        let colors: Vec<Color> = colors
            .split_whitespace()
            .map(|c| {
                c.parse()
                    .map_err(|_| parse_err(format!("vertex {vertex}: invalid color `{c}`")))
            })
            .collect::<Result<_, _>>()?;
        if lists[vertex].is_some() {
            return Err(ListError::DuplicateVertex { vertex });
        }
        lists[vertex] = Some(colors);
    }
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(vertex, l)| l.ok_or(ListError::MissingVertex { vertex }))
        .collect::<Result<Vec<_>, _>>()?;
    ListAssignment::new(sigma, k, lists)
}

pub fn write_lists(lists: &ListAssignment) -> String {
    let mut out = format!("sigma={} k={}\n", lists.sigma, lists.k);
    for (v, list) in lists.lists.iter().enumerate() {
        let colors: Vec<String> = list.iter().map(Color::to_string).collect();
        writeln!(out, "{v}: {}", colors.join(" ")).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn full_palette_when_k_equals_sigma() {
        let g = complete(5);
        let l = sample_assignment(&g, 4, 4, SeedSpec::new(7, 0)).unwrap();
        assert!(l.lists().iter().all(|list| list == &[1, 2, 3, 4]));
    }

    #[test]
    fn deterministic_per_seed() {
        let g = path(20);
        let a = sample_assignment(&g, 3, 9, SeedSpec::new(11, 5)).unwrap();
        let b = sample_assignment(&g, 3, 9, SeedSpec::new(11, 5)).unwrap();
        let c = sample_assignment(&g, 3, 9, SeedSpec::new(11, 6)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_k_above_sigma() {
        assert_eq!(
            sample_assignment(&path(2), 4, 3, SeedSpec::new(0, 0)),
            Err(ListError::InvalidParameters { k: 4, sigma: 3 })
        );
        assert!(sample_assignment(&path(2), 0, 3, SeedSpec::new(0, 0)).is_err());
    }

    #[test]
    fn identical_list_probability() {
        // Brute force over all triples of 2-subsets of {1,2,3}.
        let subsets = [[1, 2], [1, 3], [2, 3]];
        let mut same = 0;
        let mut total = 0;
        for a in &subsets {
            for b in &subsets {
                for c in &subsets {
                    total += 1;
                    if a == b && b == c {
                        same += 1;
                    }
                }
            }
        }
        let exact = same as f64 / total as f64;
        assert!((prob_identical_lists(3, 2, 3) - exact).abs() < 1e-12);
        assert!((prob_identical_lists(3, 2, 3) - 1.0 / 9.0).abs() < 1e-12);
        assert!((prob_identical_lists(2, 2, 6) - 1.0 / 15.0).abs() < 1e-12);
        assert!((prob_identical_lists(3, 3, 3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn list_format() {
        let g = path(2);
        let l = read_lists("sigma=3 k=2\n0: 1 2\n1: 2 3\n", &g).unwrap();
        assert_eq!(l.list(1), &[2, 3]);
        assert_eq!(write_lists(&l), "sigma=3 k=2\n0: 1 2\n1: 2 3\n");

        assert!(matches!(
            read_lists("sigma=3 k=2\n0: 1\n1: 2 3\n", &g),
            Err(ListError::WrongListSize { vertex: 0, .. })
        ));
        assert!(matches!(
            read_lists("sigma=3 k=2\n0: 0 1\n1: 2 3\n", &g),
            Err(ListError::ColorOutOfRange { vertex: 0, color: 0, .. })
        ));
        assert!(matches!(
            read_lists("sigma=3 k=2\n0: 1 2\n", &g),
            Err(ListError::MissingVertex { vertex: 1 })
        ));
        assert!(matches!(
            read_lists("sigma=3 k=2\n0: 1 2\n0: 1 2\n", &g),
            Err(ListError::DuplicateVertex { vertex: 0 })
        ));
        assert!(matches!(
            read_lists("sigma=3\n0: 1 2\n", &g),
            Err(ListError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn restrict_relabels() {
        let l = ListAssignment::new(4, 2, vec![vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        let r = l.restrict(&VertexSet::from(vec![0, 2]));
        assert_eq!(r.lists(), &[vec![1, 2], vec![3, 4]]);
    }
}
