//! Right-hand sides of a geodetic system and their grouping into
//! collections of odd constant terms.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::counting::multinomial;
use crate::dioph::{GeodeticSystem, RhsVector};

/// Inclusive `k` range of each odd row for target diameter `d`:
/// `L_j <= 2k + 1 <= 2d + 1`.
pub fn k_ranges(sys: &GeodeticSystem, d: u32) -> Vec<(u32, u32)> {
    sys.odd_rows().map(|r| (r.min_len / 2, d)).collect()
}

/// Every admissible right-hand side for diameter `d`, in lexicographic
/// order of the `k` vector. Every block gets diameter `d`.
#[derive(Debug, Clone)]
pub struct RhsTuples {
    ranges: Vec<(u32, u32)>,
    blocks: usize,
    diameter: u32,
    next: Option<Vec<u32>>,
}

impl RhsTuples {
    pub fn new(sys: &GeodeticSystem, d: u32) -> Self {
        let ranges = k_ranges(sys, d);
        let next = ranges.iter().all(|(lo, hi)| lo <= hi).then(|| ranges.iter().map(|r| r.0).collect());
        RhsTuples { ranges, blocks: sys.block_count(), diameter: d, next }
    }

    /// Number of tuples the stream yields in total.
    pub fn total(&self) -> BigUint {
        self.ranges.iter().map(|&(lo, hi)| BigUint::from(hi.saturating_sub(lo) + u32::from(lo <= hi))).product()
    }
}

impl Iterator for RhsTuples {
    type Item = RhsVector;

    fn next(&mut self) -> Option<RhsVector> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        for j in (0..succ.len()).rev() {
            if succ[j] < self.ranges[j].1 {
                succ[j] += 1;
                self.next = Some(succ);
                break;
            }
            succ[j] = self.ranges[j].0;
        }
        Some(RhsVector { k_values: cur, block_diameters: vec![self.diameter; self.blocks] })
    }
}

/// A multiset of odd constant terms together with the number of distinct
/// right-hand sides that permute it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CollectionGroup {
    /// Number of distinct values, `1..=m`.
    pub group: usize,
    /// Sorted ascending.
    pub values: Vec<u32>,
    /// Multiplicity of each distinct value, in ascending value order.
    pub multiplicities: Vec<u32>,
    /// `m! / (r_1! ... r_t!)`.
    pub permutations: BigUint,
}

impl CollectionGroup {
    pub fn from_values(mut values: Vec<u32>) -> Self {
        values.sort_unstable();
        let mut multiplicities: Vec<u32> = Vec::new();
        for (i, v) in values.iter().enumerate() {
            if i > 0 && values[i - 1] == *v {
                *multiplicities.last_mut().unwrap() += 1;
            } else {
                multiplicities.push(1);
            }
        }
        let permutations = multinomial(&multiplicities);
        CollectionGroup { group: multiplicities.len(), values, multiplicities, permutations }
    }

    /// Roman numeral of the group, as in the usual `I..VI` labeling.
    pub fn group_label(&self) -> String {
        roman(self.group)
    }
}

fn roman(mut n: usize) -> String {
    const DIGITS: [(usize, &str); 9] =
        [(100, "C"), (90, "XC"), (50, "L"), (40, "XL"), (10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I")];
    let mut s = String::new();
    for (v, d) in DIGITS {
        while n >= v {
            s.push_str(d);
            n -= v;
        }
    }
    s
}

/// All multisets of size `m` over the odd values `l, l + 2, ..., 2d + 1`,
/// ordered by group and then lexicographically.
pub fn collections_table(m: usize, d: u32, l: u32) -> Vec<CollectionGroup> {
    let first = if l % 2 == 1 { l } else { l + 1 };
    let odd: Vec<u32> = (first..=2 * d + 1).step_by(2).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    multisets(&odd, m, 0, &mut cur, &mut out);
    let mut groups: Vec<CollectionGroup> = out.into_iter().map(CollectionGroup::from_values).collect();
    groups.sort();
    groups
}

fn multisets(values: &[u32], m: usize, from: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == m {
        out.push(cur.clone());
        return;
    }
    for i in from..values.len() {
        cur.push(values[i]);
        multisets(values, m, i, cur, out);
        cur.pop();
    }
}

/// Sum of permutation counts per group index (position `g - 1`).
pub fn group_totals(groups: &[CollectionGroup]) -> Vec<BigUint> {
    let mut totals: BTreeMap<usize, BigUint> = BTreeMap::new();
    for g in groups {
        *totals.entry(g.group).or_default() += &g.permutations;
    }
    let max = totals.keys().copied().max().unwrap_or(0);
    (1..=max).map(|g| totals.remove(&g).unwrap_or_default()).collect()
}

/// Number of surjections from `m` positions onto `g` values, the coefficient
/// of `C(v, g)` in the group total for `v` admissible values.
pub fn surjections(m: u32, g: u32) -> BigUint {
    if m == 0 && g == 0 {
        return BigUint::one();
    }
    // inclusion-exclusion: sum_j (-1)^j C(g, j) (g - j)^m
    let mut pos = BigUint::default();
    let mut neg = BigUint::default();
    for j in 0..=g {
        let term = crate::counting::binomial(g.into(), j.into()) * num_traits::pow(BigUint::from(g - j), m as usize);
        if j % 2 == 0 {
            pos += term;
        } else {
            neg += term;
        }
    }
    pos - neg
}
