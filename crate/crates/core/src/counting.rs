//! Partition numbers, multinomials and the closed-form counts of geodetic
//! homeomorphs of complete graphs.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Memoized `p_k(i)`: partitions of `i` into exactly `k` positive parts,
/// filled by `p_k(i) = p_k(i-k) + p_{k-1}(i-k) + ... + p_1(i-k)` with
/// `p_k(i) = 0` for `i < k` and `p_k(k) = 1`.
#[derive(Debug, Clone, Default)]
pub struct PartitionTable {
    // cells[k][i] for 0 <= k <= max_k, 0 <= i <= max_i
    cells: Vec<Vec<BigUint>>,
}

impl PartitionTable {
    pub fn new(max_k: usize, max_i: usize) -> Self {
        let mut t = PartitionTable::default();
        t.grow(max_k, max_i);
        t
    }

    pub fn max_k(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn max_i(&self) -> usize {
        self.cells.first().map_or(0, |r| r.len().saturating_sub(1))
    }

    /// Extends the table to cover `k <= max_k`, `i <= max_i`.
    pub fn grow(&mut self, max_k: usize, max_i: usize) {
        let max_k = max_k.max(self.max_k());
        let max_i = max_i.max(self.max_i());
        if !self.cells.is_empty() && max_k == self.max_k() && max_i == self.max_i() {
            return;
        }
        let mut cells = vec![vec![BigUint::zero(); max_i + 1]; max_k + 1];
        // p_0(0) = 1 closes the recurrence at k = i
        cells[0][0] = BigUint::one();
        for i in 1..=max_i {
            for k in 1..=max_k.min(i) {
                cells[k][i] = (0..=k).map(|j| &cells[j][i - k]).sum();
            }
        }
        self.cells = cells;
    }

    /// `p_k(i)`; zero outside `1 <= k <= i` except `p_0(0) = 1`.
    pub fn get(&mut self, k: usize, i: usize) -> BigUint {
        if k > i {
            return BigUint::zero();
        }
        self.grow(k, i);
        self.cells[k][i].clone()
    }

    /// The table as CSV: header `k\i,1,..,max_i`, one row per `k`.
    pub fn to_csv(&mut self, max_k: usize, max_i: usize) -> String {
        self.grow(max_k, max_i);
        let mut out = String::from("k\\i");
        for i in 1..=max_i {
            let _ = write!(out, ",{i}");
        }
        out.push('\n');
        for k in 1..=max_k {
            let _ = write!(out, "{k}");
            for i in 1..=max_i {
                let _ = write!(out, ",{}", self.cells[k][i]);
            }
            out.push('\n');
        }
        out
    }
}

pub fn partition_count(k: usize, i: usize) -> BigUint {
    PartitionTable::new(k, i).get(k, i)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `n! / (r_1! r_2! ... r_t!)` with `n = sum r`.
pub fn multinomial(multiplicities: &[u32]) -> BigUint {
    let n: u64 = multiplicities.iter().map(|&r| u64::from(r)).sum();
    let den: BigUint = multiplicities.iter().map(|&r| factorial(u64::from(r))).product();
    factorial(n) / den
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Non-negative integer solutions of `x_1 + ... + x_m = n`: `C(n + m - 1, m - 1)`.
pub fn stars_and_bars(n_total: u64, m_parts: u64) -> BigUint {
    assert!(m_parts >= 1, "need at least one part");
    binomial(n_total + m_parts - 1, m_parts - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Plesnik graphs `K_n^i`.
    Kn { n: u64, i: u64 },
    /// Geodetic homeomorphs of `K4` with diameter `d`.
    K4 { d: u64 },
    /// Conjectured Petersen counts at diameter `d >= 2`.
    PetersenConjecture { d: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("unknown family '{0}' (expected kn, k4, petersen-conjecture)")]
    UnknownFamily(String),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: &'static str, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    /// Isomorphism classes.
    pub nonisomorphic: BigUint,
    /// Node-labeled graphs.
    pub labeled: BigUint,
    /// Set when the formula is conjectural rather than proven.
    pub conjecture: bool,
}

/// * `Kn { n, i }`: `(p_n(i + n), C(i + n - 1, n - 1))`
/// * `K4 { d }`: `(p_4(d + 3), C(d + 2, 3))`
/// * `PetersenConjecture { d }`: `(p_6(d + 4), C(d + 3, 5))`, flagged
pub fn closed_form_counts(family: Family) -> Result<ClosedForm, CountingError> {
    let p = |k: u64, i: u64| partition_count(k as usize, i as usize);
    match family {
        Family::Kn { n, i } => {
            if n < 1 {
                return Err(CountingError::InvalidParams { family: "kn", reason: "n must be positive".into() });
            }
            Ok(ClosedForm { nonisomorphic: p(n, i + n), labeled: binomial(i + n - 1, n - 1), conjecture: false })
        }
        Family::K4 { d } => {
            if d < 1 {
                return Err(CountingError::InvalidParams { family: "k4", reason: "d must be positive".into() });
            }
            Ok(ClosedForm { nonisomorphic: p(4, d + 3), labeled: binomial(d + 2, 3), conjecture: false })
        }
        Family::PetersenConjecture { d } => {
            if d < 2 {
                return Err(CountingError::InvalidParams {
                    family: "petersen-conjecture",
                    reason: "d must be at least 2".into(),
                });
            }
            Ok(ClosedForm { nonisomorphic: p(6, d + 4), labeled: binomial(d + 3, 5), conjecture: true })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn table_cells() {
        assert_eq!(partition_count(3, 9), n(7));
        assert_eq!(partition_count(2, 5), n(2));
        for k in 1..20 {
            assert_eq!(partition_count(k, k), n(1));
            assert_eq!(partition_count(k, k - 1), n(0));
        }
    }

    #[test]
    fn table_grows_on_demand() {
        let mut t = PartitionTable::new(2, 2);
        assert_eq!(t.get(5, 15), n(30));
        assert_eq!(t.get(2, 2), n(1));
        assert_eq!(t.max_k(), 5);
    }

    #[test]
    fn csv_layout() {
        let csv = PartitionTable::default().to_csv(3, 4);
        assert_eq!(csv, "k\\i,1,2,3,4\n1,1,1,1,1\n2,0,1,1,2\n3,0,0,1,1\n");
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 4]), n(15));
        assert_eq!(multinomial(&[6]), n(1));
        assert_eq!(multinomial(&[1; 6]), n(720));
        assert_eq!(multinomial(&[]), n(1));
    }

    #[test]
    fn stars_and_bars_matches_enumeration() {
        // brute force over 5 non-negative parts summing to 3
        let mut count = 0;
        for a in 0..=3u32 {
            for b in 0..=3 - a {
                for c in 0..=3 - a - b {
                    for d in 0..=3 - a - b - c {
                        let _e = 3 - a - b - c - d;
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 35);
        assert_eq!(stars_and_bars(3, 5), n(35));
        for m in 1..8 {
            assert_eq!(stars_and_bars(0, m), n(1));
        }
    }

    #[test]
    fn closed_forms() {
        let k4 = closed_form_counts(Family::K4 { d: 3 }).unwrap();
        assert_eq!((k4.nonisomorphic, k4.labeled, k4.conjecture), (n(2), n(10), false));
        let pc = closed_form_counts(Family::PetersenConjecture { d: 6 }).unwrap();
        assert_eq!((pc.nonisomorphic, pc.labeled, pc.conjecture), (n(5), n(126), true));
        let kn = closed_form_counts(Family::Kn { n: 5, i: 3 }).unwrap();
        assert_eq!((kn.nonisomorphic, kn.labeled), (n(3), n(35)));
        assert!(closed_form_counts(Family::PetersenConjecture { d: 1 }).is_err());
    }

    #[test]
    fn cumulative_identity() {
        // p_1(i) + ... + p_k(i) = p_k(i + k)
        let mut t = PartitionTable::new(30, 60);
        for k in 1..=30 {
            for i in 1..=30 {
                let lhs: BigUint = (1..=k).map(|j| t.get(j, i)).sum();
                assert_eq!(lhs, t.get(k, i + k), "k = {k}, i = {i}");
            }
        }
    }
}
