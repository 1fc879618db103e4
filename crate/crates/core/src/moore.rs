//! Moore graphs as a breadth-first tree `T(k, d)` plus the set `S` of edges
//! among its deepest level, the Moore bound, and the counts of shortest odd
//! and even circuits.
//!
//! Every constructor returns the graph in BFS-level order from vertex 0 with
//! children numbered left to right, so vertex 0 is the top of the tree, its
//! `k` children follow, then their `k - 1` children each, and so on.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MooreError {
    #[error("unknown base graph '{0}' (expected c5, k4, k5, kN, petersen, hoffman_singleton)")]
    UnknownName(String),
    #[error("K{0} needs at least 3 vertices")]
    CompleteTooSmall(usize),
    #[error("the Moore graph of degree 57 and diameter 2 has undecided existence; it cannot be built")]
    ExistenceUndecided,
    #[error("no Moore graph of degree {k} and diameter {d} exists")]
    NoSuchMooreGraph { k: u64, d: u32 },
    #[error("circuit-count formula divides by k - 2 and is undefined for k = {0}")]
    DegreeTooSmall(u64),
    #[error("circuit-count formula is not integral for (k, d) = ({k}, {d})")]
    NonIntegral { k: u64, d: u32 },
}

/// Degree and diameter of a Moore graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MooreParams {
    pub k: u64,
    pub d: u32,
}

/// The constructible geodetic bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseName {
    C5,
    /// Complete graph on `n >= 3` vertices (`k4`, `k5`, ... all parse here).
    Complete(usize),
    Petersen,
    HoffmanSingleton,
}

impl BaseName {
    pub fn params(&self) -> MooreParams {
        match self {
            BaseName::C5 => MooreParams { k: 2, d: 2 },
            BaseName::Complete(n) => MooreParams { k: *n as u64 - 1, d: 1 },
            BaseName::Petersen => MooreParams { k: 3, d: 2 },
            BaseName::HoffmanSingleton => MooreParams { k: 7, d: 2 },
        }
    }

    /// Resolves a Moore type to its unique graph where one is known.
    pub fn from_params(k: u64, d: u32) -> Result<BaseName, MooreError> {
        match (k, d) {
            (k, 1) if k >= 2 => Ok(BaseName::Complete(k as usize + 1)),
            (2, 2) => Ok(BaseName::C5),
            (3, 2) => Ok(BaseName::Petersen),
            (7, 2) => Ok(BaseName::HoffmanSingleton),
            (57, 2) => Err(MooreError::ExistenceUndecided),
            (k, d) => Err(MooreError::NoSuchMooreGraph { k, d }),
        }
    }
}

impl FromStr for BaseName {
    type Err = MooreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase().replace('-', "_");
        match lower.as_str() {
            "c5" => return Ok(BaseName::C5),
            "petersen" => return Ok(BaseName::Petersen),
            "hoffman_singleton" | "hs" => return Ok(BaseName::HoffmanSingleton),
            "moore57" | "moore_57" => return Err(MooreError::ExistenceUndecided),
            _ => {}
        }
        if let Some(n) = lower.strip_prefix('k').and_then(|r| r.parse::<usize>().ok()) {
            return if n >= 3 { Ok(BaseName::Complete(n)) } else { Err(MooreError::CompleteTooSmall(n)) };
        }
        if let Some((k, d)) = lower
            .strip_prefix("moore")
            .and_then(|r| r.trim_start_matches(['_', ':']).split_once(['_', ':', ',']))
        {
            if let (Ok(k), Ok(d)) = (k.parse(), d.parse()) {
                return BaseName::from_params(k, d);
            }
        }
        Err(MooreError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for BaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseName::C5 => f.write_str("c5"),
            BaseName::Complete(n) => write!(f, "k{n}"),
            BaseName::Petersen => f.write_str("petersen"),
            BaseName::HoffmanSingleton => f.write_str("hoffman_singleton"),
        }
    }
}

/// `1 + k * sum_{i=1..d} (k-1)^(i-1)`.
pub fn moore_order(k: u64, d: u32) -> BigUint {
    let k = BigUint::from(k);
    let km1 = &k - 1u32;
    let mut sum = BigUint::zero();
    let mut pow = BigUint::one();
    for _ in 0..d {
        sum += &pow;
        pow *= &km1;
    }
    BigUint::one() + k * sum
}

/// Number of circuits of length `2d + 1` and `2d + 2` in a Moore graph of
/// type `(k, d)`, from the closed formulas
/// `N(N - 2) / (2 (2d + 1) (k - 2))` and `N(N - 2) / (2 (2d + 2))` with
/// `N = k (k - 1)^d`.
pub fn theorem6_counts(k: u64, d: u32) -> Result<(BigUint, BigUint), MooreError> {
    if k <= 2 {
        return Err(MooreError::DegreeTooSmall(k));
    }
    let big_k = BigUint::from(k);
    let n = &big_k * num_traits::pow(BigUint::from(k - 1), d as usize);
    let numerator = &n * (&n - 2u32);
    let odd_den = BigUint::from(2u32) * (2 * d + 1) * (k - 2);
    let even_den = BigUint::from(2u32) * (2 * d + 2);
    let (odd, odd_rem) = numerator.div_rem(&odd_den);
    let (even, even_rem) = numerator.div_rem(&even_den);
    if !odd_rem.is_zero() || !even_rem.is_zero() {
        return Err(MooreError::NonIntegral { k, d });
    }
    Ok((odd, even))
}

pub fn build_base(name: &BaseName) -> Result<Graph, MooreError> {
    match name {
        BaseName::C5 => Ok(tree_plus_s(2, 2, &[(3, 4)])),
        BaseName::Complete(n) if *n < 3 => Err(MooreError::CompleteTooSmall(*n)),
        // T(n-1, 1) is a star; S joins every pair of leaves
        BaseName::Complete(n) => Ok(Graph::complete(*n)),
        BaseName::Petersen => Ok(tree_plus_s(3, 2, &PETERSEN_S)),
        BaseName::HoffmanSingleton => Ok(hoffman_singleton()),
    }
}

/// Leftover edges among the six level-2 vertices of `T(3, 2)`.
const PETERSEN_S: [(usize, usize); 6] = [(4, 6), (4, 9), (5, 7), (5, 8), (6, 8), (7, 9)];

/// Builds the tree `T(k, d)` with BFS numbering and adds `s_edges`.
fn tree_plus_s(k: usize, d: u32, s_edges: &[(usize, usize)]) -> Graph {
    let mut edges = Vec::new();
    let mut level = vec![0usize];
    let mut next = 1;
    for depth in 0..d {
        let mut new_level = Vec::new();
        for &u in &level {
            let children = if depth == 0 { k } else { k - 1 };
            for _ in 0..children {
                edges.push((u, next));
                new_level.push(next);
                next += 1;
            }
        }
        level = new_level;
    }
    edges.extend_from_slice(s_edges);
    Graph::new(next, edges).expect("tree plus S is a simple connected graph")
}

/// Robertson's pentagon/pentagram construction, renumbered in BFS order
/// from vertex 0.
fn hoffman_singleton() -> Graph {
    // pentagon h: vertex 5h + j; pentagram i: vertex 25 + 5i + j
    let p = |h: usize, j: usize| 5 * h + j;
    let q = |i: usize, j: usize| 25 + 5 * i + j;
    let mut edges = Vec::with_capacity(175);
    for h in 0..5 {
        for j in 0..5 {
            edges.push((p(h, j), p(h, (j + 1) % 5)));
            edges.push((q(h, j), q(h, (j + 2) % 5)));
        }
    }
    for h in 0..5 {
        for j in 0..5 {
            for i in 0..5 {
                edges.push((p(h, j), q(i, (h * i + j) % 5)));
            }
        }
    }
    Graph::new(50, edges).expect("pentagon/pentagram graph is simple").bfs_relabel(0)
}
