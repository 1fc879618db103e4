//! `K_n^i` graphs: complete graphs whose nodes carry non-negative numbers
//! `i_r`, the segment between nodes `r` and `s` having length
//! `i_r + 1 + i_s`. Also the segment-level sufficient conditions for
//! geodeticity of Moore-graph homeomorphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuits::circuits_of_length;
use crate::graph::{compute_metric, skeleton, subdivide, Graph, MetricData, Skeleton, SkeletonError, Vertex};
use crate::moore::moore_order;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlesnikError {
    #[error("K_n^i needs n >= 3, got {0}")]
    TooFewNodes(usize),
    #[error("assignment has {got} values but the graph has {n} nodes")]
    TooManyValues { n: usize, got: usize },
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
    #[error("graph is a single circuit and has no node skeleton")]
    CycleSkeleton,
    #[error("skeleton has {vertices} nodes and {edges} segments, expected K4")]
    NotK4 { vertices: usize, edges: usize },
    #[error("skeleton is not a Moore graph of diameter {0}")]
    NotMooreBase(u32),
}

/// Numbers `i_1, ..., i_n` on the nodes of `K_n`. Missing trailing values
/// are zero, so a partition of `i` is stored as its parts only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", from = "Vec<u32>")]
pub struct PlesnikAssignment {
    pub n: usize,
    pub values: Vec<u32>,
    /// Ordered composition (true) or unordered partition (false).
    pub labeled: bool,
}

impl PlesnikAssignment {
    /// Node `r` gets `values[r]`.
    pub fn positional(values: Vec<u32>) -> Self {
        PlesnikAssignment { n: values.len(), values, labeled: true }
    }

    pub fn value(&self, r: usize) -> u32 {
        self.values.get(r).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.values.iter().map(|&v| u64::from(v)).sum()
    }

    /// Values padded with zeros to length `n`.
    pub fn padded(&self) -> Vec<u32> {
        (0..self.n.max(self.values.len())).map(|r| self.value(r)).collect()
    }
}

impl From<PlesnikAssignment> for Vec<u32> {
    fn from(a: PlesnikAssignment) -> Self {
        a.padded()
    }
}

impl From<Vec<u32>> for PlesnikAssignment {
    fn from(values: Vec<u32>) -> Self {
        PlesnikAssignment::positional(values)
    }
}

/// Segment lengths of `K_n^i`, aligned with `Graph::complete(n).edges()`.
pub fn kn_lengths(n: usize, a: &PlesnikAssignment) -> Result<Vec<u32>, PlesnikError> {
    if n < 3 {
        return Err(PlesnikError::TooFewNodes(n));
    }
    if a.values.len() > n {
        return Err(PlesnikError::TooManyValues { n, got: a.values.len() });
    }
    Ok(Graph::complete(n).edges().iter().map(|&(r, s)| a.value(r) + 1 + a.value(s)).collect())
}

pub fn build_plesnik(n: usize, a: &PlesnikAssignment) -> Result<Graph, PlesnikError> {
    let lengths = kn_lengths(n, a)?;
    Ok(subdivide(&Graph::complete(n), &lengths).expect("K_n^i lengths are positive and complete"))
}

/// Inverts [`kn_lengths`]: the node numbers producing `lengths` on `K_n`, if
/// any exist.
pub fn recover_assignment(n: usize, lengths: &[u32]) -> Option<PlesnikAssignment> {
    let g = Graph::complete(n);
    if n < 3 || lengths.len() != g.edge_count() {
        return None;
    }
    let len = |r: usize, s: usize| i64::from(lengths[g.edge_index(r, s).unwrap()]);
    // i_r = (l(r,s) + l(r,t) - l(s,t) - 1) / 2 on any triangle through r
    let values: Option<Vec<u32>> = (0..n)
        .map(|r| {
            let (s, t) = match r {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let twice = len(r, s) + len(r, t) - len(s, t) - 1;
            (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
        })
        .collect();
    let a = PlesnikAssignment::positional(values?);
    (kn_lengths(n, &a).ok()? == lengths).then_some(a)
}

/// All assignments with total `i`: partitions into at most `n` parts in
/// descending order, or compositions into exactly `n` non-negative parts.
/// Both lists are in lexicographically descending order.
pub fn plesnik_assignments(n: usize, i: u32, labeled: bool) -> Vec<PlesnikAssignment> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    if labeled {
        compositions(n, i, &mut cur, &mut out);
        out.into_iter().map(PlesnikAssignment::positional).collect()
    } else {
        partitions(n, i, i, &mut cur, &mut out);
        out.into_iter().map(|values| PlesnikAssignment { n, values, labeled: false }).collect()
    }
}

fn compositions(parts: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if parts == 1 {
        cur.push(rest);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for v in (0..=rest).rev() {
        cur.push(v);
        compositions(parts - 1, rest - v, cur, out);
        cur.pop();
    }
}

fn partitions(parts: usize, rest: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    if parts == 0 {
        return;
    }
    for v in (1..=max_part.min(rest)).rev() {
        cur.push(v);
        partitions(parts - 1, rest - v, v, cur, out);
        cur.pop();
    }
}

/// A violation of one of the three conditions, as vertex sequences of the
/// checked graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// A path through `d` segments that is longer than the distance between
    /// its ends.
    NonGeodesicPath { path: Vec<Vertex>, distance: u32 },
    /// A circuit through `2d + 1` segments with even length.
    EvenCircuit { circuit: Vec<Vertex> },
    /// Two circuits through `2d + 2` segments with different lengths.
    UnequalCircuits { first: Vec<Vertex>, second: Vec<Vertex> },
}

impl Counterexample {
    /// Re-validates the counterexample on `g` from scratch.
    pub fn recheck(&self, g: &Graph) -> bool {
        let walk_ok = |seq: &[Vertex], closed: bool| {
            let mut ok = seq.windows(2).all(|w| g.has_edge(w[0], w[1]));
            if closed {
                ok &= seq.len() >= 3 && g.has_edge(seq[seq.len() - 1], seq[0]);
            }
            ok
        };
        match self {
            Counterexample::NonGeodesicPath { path, distance } => {
                let m = compute_metric(g);
                walk_ok(path, false)
                    && m.distance(path[0], path[path.len() - 1]) == *distance
                    && path.len() - 1 > *distance as usize
            }
            Counterexample::EvenCircuit { circuit } => walk_ok(circuit, true) && circuit.len() % 2 == 0,
            Counterexample::UnequalCircuits { first, second } => {
                walk_ok(first, true) && walk_ok(second, true) && first.len() != second.len()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl Condition {
    fn from_counterexample(c: Option<Counterexample>) -> Self {
        Condition { holds: c.is_none(), counterexample: c }
    }
}

/// The three segment-level conditions for a homeomorph of a Moore graph of
/// diameter `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// (1) every path through `d` segments is a geodesic.
    pub paths_geodesic: Condition,
    /// (2) every circuit through `2d + 1` segments has odd length.
    pub odd_circuits_odd: Condition,
    /// (3) all circuits through `2d + 2` segments have the same length.
    pub even_circuits_equal: Condition,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.paths_geodesic.holds && self.odd_circuits_odd.holds && self.even_circuits_equal.holds
    }
}

/// For `K4` homeomorphs the conditions are also necessary, so the verdict is
/// equivalent to geodeticity.
pub fn check_theorem2(g: &Graph) -> Result<ConditionReport, PlesnikError> {
    let sk = reduced(g)?;
    let base = &sk.base;
    if base.vertex_count() != 4 || base.edge_count() != 6 {
        return Err(PlesnikError::NotK4 { vertices: base.vertex_count(), edges: base.edge_count() });
    }
    Ok(evaluate(g, &sk, 1))
}

/// Sufficient only: graphs failing a condition may still be geodetic.
pub fn check_moore_conditions(g: &Graph, base_d: u32) -> Result<ConditionReport, PlesnikError> {
    let sk = reduced(g)?;
    let base = &sk.base;
    let is_moore = base.regular_degree().is_some_and(|k| {
        moore_order(k as u64, base_d) == base.vertex_count().into() && compute_metric(base).diameter == base_d
    });
    if !is_moore {
        return Err(PlesnikError::NotMooreBase(base_d));
    }
    Ok(evaluate(g, &sk, base_d))
}

struct Reduced {
    base: Graph,
    lengths: Vec<u32>,
    segments: Vec<Vec<Vertex>>,
}

fn reduced(g: &Graph) -> Result<Reduced, PlesnikError> {
    match skeleton(g)? {
        Skeleton::Reduced { base, lengths, segments, .. } => Ok(Reduced { base, lengths, segments }),
        Skeleton::Cycle(_) => Err(PlesnikError::CycleSkeleton),
    }
}

impl Reduced {
    /// Vertex sequence in `g` of the walk along base vertices `nodes`.
    fn expand(&self, nodes: &[Vertex]) -> Vec<Vertex> {
        let mut seq = Vec::new();
        for w in nodes.windows(2) {
            let e = self.base.edge_index(w[0], w[1]).expect("consecutive nodes are adjacent");
            let seg = &self.segments[e];
            seq.pop();
            if w[0] < w[1] {
                seq.extend_from_slice(seg);
            } else {
                seq.extend(seg.iter().rev());
            }
        }
        seq
    }

    fn length(&self, nodes: &[Vertex]) -> u64 {
        nodes
            .windows(2)
            .map(|w| u64::from(self.lengths[self.base.edge_index(w[0], w[1]).unwrap()]))
            .sum()
    }

    fn circuit(&self, nodes: &[Vertex]) -> Vec<Vertex> {
        let mut closed = nodes.to_vec();
        closed.push(nodes[0]);
        let mut seq = self.expand(&closed);
        seq.pop();
        seq
    }
}

fn evaluate(g: &Graph, sk: &Reduced, d: u32) -> ConditionReport {
    let metric = compute_metric(g);
    let paths = segment_paths(&sk.base, d as usize);
    let non_geodesic = first_non_geodesic(sk, &metric, &paths);

    let odd_len = 2 * d as usize + 1;
    let even_circuit = circuits_of_length(&sk.base, odd_len).into_iter().find_map(|c| {
        let mut closed = c.vertices().to_vec();
        closed.push(closed[0]);
        sk.length(&closed).is_multiple_of(2).then(|| Counterexample::EvenCircuit { circuit: sk.circuit(c.vertices()) })
    });

    let large: Vec<_> = circuits_of_length(&sk.base, odd_len + 1)
        .into_iter()
        .map(|c| {
            let mut closed = c.vertices().to_vec();
            closed.push(closed[0]);
            (sk.length(&closed), c)
        })
        .collect();
    let unequal = large.first().and_then(|(l0, c0)| {
        large.iter().find(|(l, _)| l != l0).map(|(_, c)| Counterexample::UnequalCircuits {
            first: sk.circuit(c0.vertices()),
            second: sk.circuit(c.vertices()),
        })
    });

    ConditionReport {
        paths_geodesic: Condition::from_counterexample(non_geodesic),
        odd_circuits_odd: Condition::from_counterexample(even_circuit),
        even_circuits_equal: Condition::from_counterexample(unequal),
    }
}

fn first_non_geodesic(sk: &Reduced, metric: &MetricData, paths: &[Vec<Vertex>]) -> Option<Counterexample> {
    paths.iter().find_map(|p| {
        let seq = sk.expand(p);
        let distance = metric.distance(seq[0], seq[seq.len() - 1]);
        (seq.len() - 1 > distance as usize).then_some(Counterexample::NonGeodesicPath { path: seq, distance })
    })
}

/// Simple paths with exactly `len` edges in `base`, each listed once from
/// its smaller end, in lexicographic order.
fn segment_paths(base: &Graph, len: usize) -> Vec<Vec<Vertex>> {
    fn extend(base: &Graph, len: usize, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if path.len() == len + 1 {
            if path[0] < path[len] {
                out.push(path.clone());
            }
            return;
        }
        let last = *path.last().unwrap();
        for &w in base.neighbors(last) {
            if !path.contains(&w) {
                path.push(w);
                extend(base, len, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in base.vertices() {
        extend(base, len, &mut vec![v], &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::stars_and_bars;
    use crate::graph::{is_geodetic_even_circuit, is_geodetic_unique};
    use crate::moore::{build_base, BaseName};

    fn values(v: &[PlesnikAssignment]) -> Vec<Vec<u32>> {
        v.iter().map(|a| a.values.clone()).collect()
    }

    #[test]
    fn partitions_of_three() {
        let p = plesnik_assignments(5, 3, false);
        assert_eq!(values(&p), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(values(&plesnik_assignments(2, 3, false)), vec![vec![3], vec![2, 1]]);
        assert_eq!(plesnik_assignments(3, 0, false).len(), 1);
        assert_eq!(plesnik_assignments(3, 0, false)[0].padded(), vec![0, 0, 0]);
    }

    #[test]
    fn compositions_match_stars_and_bars() {
        for n in 1..6 {
            for i in 0..6 {
                let c = plesnik_assignments(n, i, true);
                assert_eq!(num_bigint::BigUint::from(c.len()), stars_and_bars(i.into(), n as u64), "n = {n}, i = {i}");
                assert!(c.iter().all(|a| a.values.len() == n && a.total() == u64::from(i)));
            }
        }
    }

    #[test]
    fn zero_assignment_is_complete_graph() {
        let a = PlesnikAssignment::positional(vec![0; 4]);
        assert_eq!(build_plesnik(4, &a).unwrap(), Graph::complete(4));
    }

    #[test]
    fn small_plesnik_graphs_are_geodetic() {
        let g = build_plesnik(4, &PlesnikAssignment::positional(vec![1, 1, 0, 0])).unwrap();
        assert!(is_geodetic_unique(&g).is_geodetic);
        assert_eq!(compute_metric(&g).diameter, 3);
        let fig = build_plesnik(5, &PlesnikAssignment::positional(vec![3, 0, 0, 0, 0])).unwrap();
        assert!(is_geodetic_even_circuit(&fig).is_geodetic);
        for a in plesnik_assignments(5, 3, false) {
            assert!(is_geodetic_unique(&build_plesnik(5, &a).unwrap()).is_geodetic, "{:?}", a.values);
        }
    }

    #[test]
    fn build_rejects_bad_input() {
        let a = PlesnikAssignment::positional(vec![0; 5]);
        assert_eq!(build_plesnik(4, &a), Err(PlesnikError::TooManyValues { n: 4, got: 5 }));
        assert_eq!(build_plesnik(2, &PlesnikAssignment::positional(vec![])), Err(PlesnikError::TooFewNodes(2)));
    }

    #[test]
    fn assignments_round_trip() {
        for a in plesnik_assignments(5, 4, true) {
            let l = kn_lengths(5, &a).unwrap();
            assert_eq!(recover_assignment(5, &l), Some(a));
        }
        // 3 + 1 + 1 around a triangle of K4 has no node numbers
        assert_eq!(recover_assignment(4, &[2, 1, 1, 1, 1, 1]), None);
    }

    #[test]
    fn json_is_a_plain_list() {
        let a = PlesnikAssignment { n: 4, values: vec![2, 1], labeled: false };
        assert_eq!(serde_json::to_string(&a).unwrap(), "[2,1,0,0]");
        let back: PlesnikAssignment = serde_json::from_str("[2,1,0,0]").unwrap();
        assert_eq!(back.padded(), a.padded());
    }

    #[test]
    fn theorem2_on_plesnik_graph() {
        let g = build_plesnik(4, &PlesnikAssignment::positional(vec![1, 1, 0, 0])).unwrap();
        let r = check_theorem2(&g).unwrap();
        assert!(r.all_hold());
        let sk = reduced(&g).unwrap();
        for c in circuits_of_length(&sk.base, 4) {
            assert_eq!(sk.circuit(c.vertices()).len(), 8);
        }
        assert!(check_theorem2(&Graph::complete(4)).unwrap().all_hold());
    }

    #[test]
    fn theorem2_parity_failure() {
        let g = subdivide(&Graph::complete(4), &[2, 1, 1, 1, 1, 1]).unwrap();
        let r = check_theorem2(&g).unwrap();
        assert!(!r.odd_circuits_odd.holds);
        let c = r.odd_circuits_odd.counterexample.unwrap();
        assert!(matches!(&c, Counterexample::EvenCircuit { circuit } if circuit.len() == 4));
        assert!(c.recheck(&g));
    }

    #[test]
    fn theorem2_is_equivalent_to_geodeticity() {
        let k4 = Graph::complete(4);
        let mut lengths = [1u32; 6];
        let mut geodetic = 0;
        loop {
            let g = subdivide(&k4, &lengths).unwrap();
            let r = check_theorem2(&g).unwrap();
            let truth = is_geodetic_unique(&g).is_geodetic;
            assert_eq!(r.all_hold(), truth, "{lengths:?}");
            geodetic += usize::from(truth);
            for c in [&r.paths_geodesic, &r.odd_circuits_odd, &r.even_circuits_equal] {
                if let Some(x) = &c.counterexample {
                    assert!(x.recheck(&g), "{lengths:?}: {x:?}");
                }
            }
            let Some(p) = lengths.iter().position(|&l| l < 4) else { break };
            lengths[p] += 1;
            lengths[..p].fill(1);
        }
        assert!(geodetic > 1);
    }

    #[test]
    fn moore_conditions_on_petersen() {
        let p = build_base(&BaseName::Petersen).unwrap();
        assert!(check_moore_conditions(&p, 2).unwrap().all_hold());
        let mut l = vec![1; 15];
        l[0] = 2;
        let g = subdivide(&p, &l).unwrap();
        let r = check_moore_conditions(&g, 2).unwrap();
        assert!(!r.odd_circuits_odd.holds);
        assert!(r.odd_circuits_odd.counterexample.unwrap().recheck(&g));
        assert_eq!(check_moore_conditions(&p, 3), Err(PlesnikError::NotMooreBase(3)));
        assert!(matches!(check_theorem2(&p), Err(PlesnikError::NotK4 { .. })));
    }
}
