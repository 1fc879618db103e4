use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Graph, Vertex};

/// All-pairs hop distances, geodesic multiplicities, diameter and girth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricData {
    pub dist: Vec<Vec<u32>>,
    pub geodesic_count: Vec<Vec<BigUint>>,
    pub diameter: u32,
    /// `None` for forests.
    pub girth: Option<u32>,
}

impl MetricData {
    pub fn distance(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u][v]
    }

    /// Vertices at distance exactly `r` from `v`, ascending.
    pub fn sphere(&self, v: Vertex, r: u32) -> impl Iterator<Item = Vertex> + '_ {
        self.dist[v].iter().enumerate().filter(move |&(_, &d)| d == r).map(|(u, _)| u)
    }
}

/// Breadth-first search from every vertex, accumulating shortest-path
/// multiplicities layer by layer.
pub fn compute_metric(g: &Graph) -> MetricData {
    let n = g.vertex_count();
    let mut dist = vec![vec![u32::MAX; n]; n];
    let mut geodesic_count = vec![vec![BigUint::zero(); n]; n];
    let mut girth: Option<u32> = None;
    let mut queue = VecDeque::with_capacity(n);
    let mut parent = vec![usize::MAX; n];

    for s in g.vertices() {
        let d = &mut dist[s];
        let c = &mut geodesic_count[s];
        d[s] = 0;
        c[s] = BigUint::one();
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if d[w] == u32::MAX {
                    d[w] = d[u] + 1;
                    parent[w] = u;
                    c[w] = c[u].clone();
                    queue.push_back(w);
                } else if d[w] == d[u] + 1 {
                    let add = c[u].clone();
                    c[w] += add;
                }
                // Any non-tree edge closes a circuit through s of length at
                // most d[u] + d[w] + 1; the minimum over all roots is exact.
                if parent[u] != w && parent[w] != u {
                    let len = d[u] + d[w] + 1;
                    if d[w] != u32::MAX && girth.is_none_or(|best| len < best) {
                        girth = Some(len);
                    }
                }
            }
        }
    }

    let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
    MetricData { dist, geodesic_count, diameter, girth }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moore::{build_base, BaseName};

    #[test]
    fn petersen_diameter_and_girth() {
        let m = compute_metric(&build_base(&BaseName::Petersen).unwrap());
        assert_eq!((m.diameter, m.girth), (2, Some(5)));
    }

    #[test]
    fn complete_graph_k4() {
        let m = compute_metric(&Graph::complete(4));
        assert_eq!((m.diameter, m.girth), (1, Some(3)));
    }

    #[test]
    fn five_cycle_has_unique_geodesics() {
        let m = compute_metric(&Graph::cycle(5).unwrap());
        assert_eq!((m.diameter, m.girth), (2, Some(5)));
        assert!(m.geodesic_count.iter().flatten().all(|c| c.is_one()));
    }

    #[test]
    fn four_cycle_counts_two_geodesics_between_opposites() {
        let m = compute_metric(&Graph::cycle(4).unwrap());
        assert_eq!(m.geodesic_count[0][2], BigUint::from(2u32));
        assert_eq!(m.girth, Some(4));
    }

    #[test]
    fn tree_has_no_girth() {
        let g = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let m = compute_metric(&g);
        assert_eq!((m.diameter, m.girth), (2, None));
    }

    #[test]
    fn multiplicities_do_not_overflow_machine_words() {
        // 70 stacked diamonds: 2^70 geodesics end to end
        let k = 70;
        let mut edges = Vec::new();
        for i in 0..k {
            let (a, b, c, d) = (3 * i, 3 * i + 1, 3 * i + 2, 3 * i + 3);
            edges.extend([(a, b), (a, c), (b, d), (c, d)]);
        }
        let g = Graph::new(3 * k + 1, edges).unwrap();
        let m = compute_metric(&g);
        assert_eq!(m.geodesic_count[0][3 * k], BigUint::one() << k);
    }
}
