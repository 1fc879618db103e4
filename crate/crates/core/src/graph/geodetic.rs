//! Three independent geodeticity tests.
//!
//! * [`is_geodetic_unique`] counts shortest paths directly.
//! * [`is_geodetic_even_circuit`] searches for an even circuit `C` with a
//!   `C`-opposite pair `u, v` at distance `|C| / 2` in the whole graph; the
//!   two halves of such a circuit are then two distinct geodesics.
//! * [`is_geodetic_neighborhood`] checks that every vertex at distance
//!   `r >= 2` from a root has exactly one neighbor at distance `r - 1`.
//!
//! All three share only the hop-distance matrix; they must agree on every
//! connected graph.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::metric::{compute_metric, MetricData};
use super::{Graph, Vertex};
use crate::circuits::{circuits_up_to, Circuit};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `u < v` joined by `count >= 2` geodesics.
    MultipleGeodesics {
        u: Vertex,
        v: Vertex,
        #[serde(serialize_with = "as_decimal")]
        count: BigUint,
    },
    /// An even circuit (canonical vertex order) whose opposite vertices `u, v`
    /// lie at distance `|C| / 2`.
    EvenCircuit { circuit: Vec<Vertex>, u: Vertex, v: Vertex },
    /// `vertex` lies at distance `radius` from `root` and has the listed
    /// neighbors at distance `radius - 1`.
    Neighborhood { root: Vertex, radius: u32, vertex: Vertex, back_neighbors: Vec<Vertex> },
}

fn as_decimal<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

impl Witness {
    /// Re-derives the violation from scratch against `g`.
    pub fn recheck(&self, g: &Graph) -> bool {
        let m = compute_metric(g);
        match self {
            Witness::MultipleGeodesics { u, v, count } => {
                *u < g.vertex_count() && *v < g.vertex_count() && m.geodesic_count[*u][*v] == *count && *count > BigUint::one()
            }
            Witness::EvenCircuit { circuit, u, v } => {
                let len = circuit.len();
                let valid = len >= 4
                    && len % 2 == 0
                    && (0..len).all(|i| g.has_edge(circuit[i], circuit[(i + 1) % len]));
                let mut sorted = circuit.clone();
                sorted.sort_unstable();
                sorted.dedup();
                let (Some(pu), Some(pv)) = (
                    circuit.iter().position(|x| x == u),
                    circuit.iter().position(|x| x == v),
                ) else {
                    return false;
                };
                valid
                    && sorted.len() == len
                    && pu.abs_diff(pv) == len / 2
                    && m.dist[*u][*v] as usize == len / 2
            }
            Witness::Neighborhood { root, radius, vertex, back_neighbors } => {
                let actual: Vec<Vertex> = g
                    .neighbors(*vertex)
                    .iter()
                    .copied()
                    .filter(|&w| m.dist[*root][w] + 1 == *radius)
                    .collect();
                *radius >= 2 && m.dist[*root][*vertex] == *radius && actual == *back_neighbors && actual.len() != 1
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodeticityReport {
    pub is_geodetic: bool,
    pub witness: Option<Witness>,
}

impl GeodeticityReport {
    fn from_witness(witness: Option<Witness>) -> Self {
        GeodeticityReport { is_geodetic: witness.is_none(), witness }
    }
}

pub fn is_geodetic_unique(g: &Graph) -> GeodeticityReport {
    is_geodetic_unique_with(g, &compute_metric(g))
}

/// First pair `(u, v)`, `u < v`, in lexicographic order with two or more
/// geodesics.
pub fn is_geodetic_unique_with(g: &Graph, m: &MetricData) -> GeodeticityReport {
    let witness = g.vertices().find_map(|u| {
        (u + 1..g.vertex_count()).find_map(|v| {
            let count = &m.geodesic_count[u][v];
            (!count.is_one()).then(|| Witness::MultipleGeodesics { u, v, count: count.clone() })
        })
    });
    GeodeticityReport::from_witness(witness)
}

pub fn is_geodetic_even_circuit(g: &Graph) -> GeodeticityReport {
    is_geodetic_even_circuit_with(g, &compute_metric(g))
}

/// Searches even circuits of length at most `2 * diameter + 2`. The witness is
/// the shortest violating circuit, ties broken by canonical vertex sequence,
/// with its lexicographically first offending opposite pair.
pub fn is_geodetic_even_circuit_with(g: &Graph, m: &MetricData) -> GeodeticityReport {
    let bound = 2 * m.diameter as usize + 2;
    let witness = circuits_up_to(g, bound)
        .into_iter()
        .filter(|c| c.len() % 2 == 0)
        .find_map(|c| violating_pair(&c, m).map(|(u, v)| (c, u, v)))
        .map(|(c, u, v)| Witness::EvenCircuit { circuit: c.into_vertices(), u, v });
    GeodeticityReport::from_witness(witness)
}

fn violating_pair(c: &Circuit, m: &MetricData) -> Option<(Vertex, Vertex)> {
    let verts = c.vertices();
    let half = verts.len() / 2;
    (0..half)
        .map(|i| (verts[i], verts[i + half]))
        .filter(|&(u, v)| m.dist[u][v] as usize == half)
        .min_by_key(|&(u, v)| (u.min(v), u.max(v)))
}

pub fn is_geodetic_neighborhood(g: &Graph) -> GeodeticityReport {
    is_geodetic_neighborhood_with(g, &compute_metric(g))
}

/// Witness order: root ascending, then radius, then vertex id.
pub fn is_geodetic_neighborhood_with(g: &Graph, m: &MetricData) -> GeodeticityReport {
    let witness = g.vertices().find_map(|root| {
        (2..=m.diameter).find_map(|radius| {
            m.sphere(root, radius).find_map(|vertex| {
                let back: Vec<Vertex> = g
                    .neighbors(vertex)
                    .iter()
                    .copied()
                    .filter(|&w| m.dist[root][w] + 1 == radius)
                    .collect();
                (back.len() != 1).then_some(Witness::Neighborhood {
                    root,
                    radius,
                    vertex,
                    back_neighbors: back,
                })
            })
        })
    });
    GeodeticityReport::from_witness(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moore::{build_base, BaseName};
    use crate::plesnik::{build_plesnik, PlesnikAssignment};

    fn all_three(g: &Graph) -> [GeodeticityReport; 3] {
        [is_geodetic_unique(g), is_geodetic_even_circuit(g), is_geodetic_neighborhood(g)]
    }

    #[test]
    fn petersen_is_geodetic_under_every_oracle() {
        let g = build_base(&BaseName::Petersen).unwrap();
        for r in all_three(&g) {
            assert!(r.is_geodetic && r.witness.is_none());
        }
    }

    #[test]
    fn complete_graphs_are_geodetic() {
        for n in 1..=7 {
            let g = Graph::complete(n);
            assert!(all_three(&g).iter().all(|r| r.is_geodetic), "K{n}");
        }
    }

    #[test]
    fn four_cycle_witnesses() {
        let g = Graph::cycle(4).unwrap();
        let [u, c, nb] = all_three(&g);
        assert_eq!(
            u.witness,
            Some(Witness::MultipleGeodesics { u: 0, v: 2, count: BigUint::from(2u32) })
        );
        assert_eq!(c.witness, Some(Witness::EvenCircuit { circuit: vec![0, 1, 2, 3], u: 0, v: 2 }));
        assert_eq!(
            nb.witness,
            Some(Witness::Neighborhood { root: 0, radius: 2, vertex: 2, back_neighbors: vec![1, 3] })
        );
        for r in [u, c, nb] {
            assert!(!r.is_geodetic);
            assert!(r.witness.unwrap().recheck(&g));
        }
    }

    #[test]
    fn chorded_four_cycle_is_caught_by_opposite_pair() {
        // 0 and 1 share neighbors 2 and 4, and 2-4 is a chord: no even circuit
        // has every opposite pair at distance 2, but one pair suffices.
        let g = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)]).unwrap();
        let verdicts: Vec<bool> = all_three(&g).iter().map(|r| r.is_geodetic).collect();
        assert_eq!(verdicts, vec![false; 3]);
    }

    #[test]
    fn k5_plesnik_member_is_geodetic() {
        let a = PlesnikAssignment::positional(vec![2, 1, 0, 0, 0]);
        let g = build_plesnik(5, &a).unwrap();
        let r = is_geodetic_neighborhood(&g);
        assert!(r.is_geodetic);
    }

    #[test]
    fn recheck_rejects_fabricated_witness() {
        let g = build_base(&BaseName::Petersen).unwrap();
        let fake = Witness::MultipleGeodesics { u: 0, v: 5, count: BigUint::from(2u32) };
        assert!(!fake.recheck(&g));
        let fake = Witness::Neighborhood { root: 0, radius: 2, vertex: 4, back_neighbors: vec![1] };
        assert!(!fake.recheck(&g));
    }
}
