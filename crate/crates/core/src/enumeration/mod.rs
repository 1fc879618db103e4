//! Enumeration of geodetic homeomorphs of a base graph for a target
//! diameter: generate right-hand sides, solve, materialize, verify, and
//! reduce to isomorphism orbits.
//!
//! Solving runs in parallel over right-hand sides; results are merged in
//! right-hand-side order so the output never depends on the schedule.

mod automorphism;
mod rhs;

pub use automorphism::{automorphism_group, edge_permutation, EdgeAction, OrbitClass};
pub use rhs::{collections_table, group_totals, k_ranges, surjections, CollectionGroup, RhsTuples};

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuits::circuits_of_length;
use crate::dioph::{build_moore_system, DiophError, GeodeticSystem, RhsVector};
use crate::graph::{
    compute_metric, is_geodetic_even_circuit_with, is_geodetic_neighborhood_with, is_geodetic_unique_with,
    subdivide, Graph, Vertex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error(transparent)]
    Dioph(#[from] DiophError),
    #[error("target diameter {d} is below the base diameter {base_d}")]
    DiameterTooSmall { d: u32, base_d: u32 },
    #[error("natural solution {lengths:?} for k = {k_values:?} fails the {oracle} geodeticity test")]
    Unsound { k_values: Vec<u32>, lengths: Vec<u32>, oracle: &'static str },
    #[error("natural solution {lengths:?} for k = {k_values:?} has diameter {built}, expected {expected}")]
    DiameterMismatch { k_values: Vec<u32>, lengths: Vec<u32>, built: u32, expected: u32 },
    #[error("length vector {0:?} solves two different right-hand sides")]
    DuplicateSolution(Vec<u32>),
    #[error("record has {got} lengths but the base has {expected} edges")]
    MixedBases { expected: usize, got: usize },
}

impl EnumerationError {
    /// True for failures that contradict the theory rather than the input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            EnumerationError::Unsound { .. }
                | EnumerationError::DiameterMismatch { .. }
                | EnumerationError::DuplicateSolution(_)
        )
    }
}

/// One natural solution and the invariants of its subdivided graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub rhs: RhsVector,
    /// Segment length per base edge.
    pub lengths: Vec<u32>,
    pub diameter: u32,
    pub girth: u32,
    pub orbit_id: Option<usize>,
}

impl SolutionRecord {
    pub fn graph(&self, base: &Graph) -> Graph {
        subdivide(base, &self.lengths).expect("records hold positive lengths for their base")
    }

    /// Odd constant terms sorted ascending.
    pub fn collection(&self) -> Vec<u32> {
        let mut v = self.rhs.odd_terms();
        v.sort_unstable();
        v
    }
}

/// Solves the geodetic system of one base for any number of diameters.
///
/// The odd rows bound only the basis circuits by `2D + 1`. A natural
/// solution is admissible when every shortest odd circuit of the base obeys
/// the same bound; for `K4` the fourth triangle can otherwise reach
/// `2D + 3` and give a non-geodetic graph.
#[derive(Debug)]
pub struct Enumerator {
    system: GeodeticSystem,
    /// Edge supports of all base circuits of length `2d + 1`.
    shortest_odd: Vec<Vec<usize>>,
}

impl Enumerator {
    /// Builds the system with odd rows from the BFS tree at `root`.
    pub fn new(base: &Graph, root: Vertex) -> Result<Self, EnumerationError> {
        Ok(Enumerator::from_system(build_moore_system(base, root)?))
    }

    pub fn from_system(system: GeodeticSystem) -> Self {
        let base = system.base();
        let len = 2 * system.base_diameter() as usize + 1;
        let shortest_odd = circuits_of_length(base, len).iter().map(|c| c.edge_indices(base)).collect();
        Enumerator { system, shortest_odd }
    }

    /// Whether every shortest odd base circuit has length at most `2d + 1`.
    pub fn admissible(&self, lengths: &[u32], d: u32) -> bool {
        self.shortest_odd.iter().all(|c| c.iter().map(|&e| u64::from(lengths[e])).sum::<u64>() <= 2 * u64::from(d) + 1)
    }

    pub fn system(&self) -> &GeodeticSystem {
        &self.system
    }

    pub fn base(&self) -> &Graph {
        self.system.base()
    }

    pub fn tuples(&self, d: u32) -> Result<RhsTuples, EnumerationError> {
        let base_d = self.system.base_diameter();
        if d < base_d {
            return Err(EnumerationError::DiameterTooSmall { d, base_d });
        }
        Ok(RhsTuples::new(&self.system, d))
    }

    /// Every natural solution for diameter `d`, verified and sorted by
    /// right-hand side. Orbit ids are left unset.
    pub fn enumerate(&self, d: u32) -> Result<Vec<SolutionRecord>, EnumerationError> {
        const CHUNK: usize = 1 << 16;
        let mut tuples = self.tuples(d)?;
        log::info!("enumerating {} right-hand sides at D = {d}", tuples.total());
        let elimination = self.system.elimination();
        let mut records = Vec::new();
        loop {
            let chunk: Vec<RhsVector> = tuples.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let solved: Vec<Vec<SolutionRecord>> = chunk
                .into_par_iter()
                .map(|rhs| {
                    let constants = self.system.constants(&rhs)?;
                    elimination
                        .natural_solutions(&constants)
                        .into_iter()
                        .filter(|lengths| self.admissible(lengths, d))
                        .map(|lengths| self.verify(&rhs, lengths, d))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?;
            records.extend(solved.into_iter().flatten());
        }
        let mut seen = HashSet::new();
        for r in &records {
            if !seen.insert(&r.lengths) {
                return Err(EnumerationError::DuplicateSolution(r.lengths.clone()));
            }
        }
        log::info!("{} natural solutions at D = {d}", records.len());
        Ok(records)
    }

    fn verify(&self, rhs: &RhsVector, lengths: Vec<u32>, d: u32) -> Result<SolutionRecord, EnumerationError> {
        let g = subdivide(self.base(), &lengths).expect("natural solutions are positive");
        let metric = compute_metric(&g);
        let checks = [
            ("unique-geodesic", is_geodetic_unique_with(&g, &metric).is_geodetic),
            ("even-circuit", is_geodetic_even_circuit_with(&g, &metric).is_geodetic),
            ("neighborhood", is_geodetic_neighborhood_with(&g, &metric).is_geodetic),
        ];
        if let Some((oracle, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(EnumerationError::Unsound { k_values: rhs.k_values.clone(), lengths, oracle });
        }
        // without even rows nothing ties the built diameter to D
        if self.system.even_count() > 0 && metric.diameter != d {
            return Err(EnumerationError::DiameterMismatch {
                k_values: rhs.k_values.clone(),
                lengths,
                built: metric.diameter,
                expected: d,
            });
        }
        Ok(SolutionRecord {
            rhs: rhs.clone(),
            lengths,
            diameter: metric.diameter,
            girth: metric.girth.expect("homeomorphs of bases with circuits have circuits"),
            orbit_id: None,
        })
    }
}

/// Enumerates with odd rows rooted at vertex 0.
pub fn enumerate_homeomorphs(base: &Graph, d: u32) -> Result<Vec<SolutionRecord>, EnumerationError> {
    Enumerator::new(base, 0)?.enumerate(d)
}

/// Assigns `orbit_id` to every record and returns the orbit classes, ordered
/// by representative.
pub fn dedup_orbits(base: &Graph, records: &mut [SolutionRecord]) -> Result<Vec<OrbitClass>, EnumerationError> {
    if let Some(r) = records.iter().find(|r| r.lengths.len() != base.edge_count()) {
        return Err(EnumerationError::MixedBases { expected: base.edge_count(), got: r.lengths.len() });
    }
    let action = EdgeAction::new(base);
    let vectors: Vec<Vec<u32>> = records.iter().map(|r| r.lengths.clone()).collect();
    let (classes, assignment) = action.orbits(&vectors);
    for (r, id) in records.iter_mut().zip(assignment) {
        r.orbit_id = Some(id);
    }
    Ok(classes)
}

/// One row of the per-diameter result tables: a collection of odd constant
/// terms, how many of its permutations gave a geodetic graph, and the
/// `(diameter, girth)` of those graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionSummary {
    pub collection: CollectionGroup,
    pub found: usize,
    pub diameter: u32,
    pub girth: u32,
}

impl CollectionSummary {
    /// Every permutation of the collection is feasible.
    pub fn complete(&self) -> bool {
        BigUint::from(self.found) == self.collection.permutations
    }
}

/// Groups records by (collection, diameter, girth), ordered by group and then
/// collection.
pub fn collection_summary(records: &[SolutionRecord]) -> Vec<CollectionSummary> {
    let mut by_key: BTreeMap<(Vec<u32>, u32, u32), usize> = BTreeMap::new();
    for r in records {
        *by_key.entry((r.collection(), r.diameter, r.girth)).or_default() += 1;
    }
    let mut rows: Vec<CollectionSummary> = by_key
        .into_iter()
        .map(|((values, diameter, girth), found)| CollectionSummary {
            collection: CollectionGroup::from_values(values),
            found,
            diameter,
            girth,
        })
        .collect();
    rows.sort_by(|a, b| (&a.collection, a.diameter, a.girth).cmp(&(&b.collection, b.diameter, b.girth)));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{binomial, partition_count};
    use crate::moore::{build_base, BaseName};

    fn petersen() -> Graph {
        build_base(&BaseName::Petersen).unwrap()
    }

    #[test]
    fn petersen_small_diameters() {
        let p = petersen();
        let two = enumerate_homeomorphs(&p, 2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].lengths, vec![1; 15]);
        assert_eq!((two[0].diameter, two[0].girth), (2, 5));

        let three = enumerate_homeomorphs(&p, 3).unwrap();
        assert_eq!(three.len(), 6);
        let s = collection_summary(&three);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].collection.values, vec![5, 7, 7, 7, 7, 7]);
        assert_eq!((s[0].found, s[0].diameter, s[0].girth), (6, 3, 5));
        assert!(s[0].complete());
    }

    #[test]
    fn petersen_diameter_four() {
        let p = petersen();
        let mut four = enumerate_homeomorphs(&p, 4).unwrap();
        assert_eq!(four.len(), 21);
        let s = collection_summary(&four);
        let rows: Vec<_> = s.iter().map(|r| (r.collection.values.clone(), r.found, r.diameter, r.girth)).collect();
        assert_eq!(rows, vec![(vec![5, 9, 9, 9, 9, 9], 6, 4, 5), (vec![7, 7, 9, 9, 9, 9], 15, 4, 7)]);
        let orbits = dedup_orbits(&p, &mut four).unwrap();
        assert_eq!(orbits.len(), 2);
        assert!(four.iter().all(|r| r.orbit_id.is_some()));
        assert!(four.windows(2).all(|w| w[0].rhs < w[1].rhs));
    }

    #[test]
    fn k4_laws_small() {
        let k4 = Graph::complete(4);
        for d in 1..=5u32 {
            let mut records = enumerate_homeomorphs(&k4, d).unwrap();
            assert_eq!(BigUint::from(records.len()), binomial(u64::from(d) + 2, 3), "D = {d}");
            let orbits = dedup_orbits(&k4, &mut records).unwrap();
            assert_eq!(BigUint::from(orbits.len()), partition_count(4, d as usize + 3), "D = {d}");
        }
    }

    #[test]
    fn k4_inadmissible_solution_is_dropped() {
        // the triangle 1-2-3 has length 9 > 2D + 1
        let e = Enumerator::new(&Graph::complete(4), 0).unwrap();
        let lengths = [1, 1, 1, 3, 3, 3];
        let rhs = RhsVector::uniform(vec![2, 2, 2], 3);
        let c = e.system().constants(&rhs).unwrap();
        assert!(e.system().elimination().natural_solutions(&c).contains(&lengths.to_vec()));
        assert!(!e.admissible(&lengths, 3));
        assert!(e.enumerate(3).unwrap().iter().all(|r| r.lengths != lengths));
    }

    #[test]
    fn c5_counts_compositions() {
        let c5 = build_base(&BaseName::C5).unwrap();
        let records = enumerate_homeomorphs(&c5, 3).unwrap();
        // compositions of 5 and 7 into five positive parts
        assert_eq!(records.len(), 1 + 15);
        assert!(records.iter().all(|r| r.girth == 2 * r.rhs.k_values[0] + 1));
    }

    #[test]
    fn rejects_small_diameter() {
        assert_eq!(
            enumerate_homeomorphs(&petersen(), 1),
            Err(EnumerationError::DiameterTooSmall { d: 1, base_d: 2 })
        );
    }

    #[test]
    fn mixed_bases_are_rejected() {
        let mut records = enumerate_homeomorphs(&Graph::complete(4), 1).unwrap();
        assert!(matches!(dedup_orbits(&petersen(), &mut records), Err(EnumerationError::MixedBases { .. })));
    }

    #[test]
    fn output_is_deterministic() {
        let p = petersen();
        let a = enumerate_homeomorphs(&p, 5).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| enumerate_homeomorphs(&p, 5).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.len(), 56);
    }
}
