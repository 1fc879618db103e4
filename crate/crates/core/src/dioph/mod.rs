//! Geodetic systems of Diophantine equations.
//!
//! The unknowns are the segment lengths of a homeomorph of a base graph, one
//! per base edge (in sorted edge order). Odd rows are the circuits of a
//! fundamental basis and must sum to `2k + 1`; even rows are the base's even
//! circuits of length `4..=2d+2` and must all sum to `2D + 2`, where `D` is
//! the diameter targeted for the homeomorph.

mod solve;

pub use solve::{natural_solutions, solve_exact, Elimination, SolveOutcome, SolveTag};

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuits::{bfs_spanning_tree, circuits_of_length, fundamental_basis, CircuitError};
use crate::graph::{compute_metric, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiophError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("complete-graph block systems need n >= 4, got {0}")]
    TooFewNodes(usize),
    #[error("right-hand side has {got_k} k-values and {got_blocks} diameters, system needs {want_k} and {want_blocks}")]
    DimensionMismatch { want_k: usize, got_k: usize, want_blocks: usize, got_blocks: usize },
    #[error("odd row {row}: 2k+1 = {value} is outside [{min}, {max}]")]
    OddTermOutOfRange { row: usize, value: u64, min: u64, max: u64 },
    #[error("{0} lengths given for {1} variables")]
    LengthMismatch(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Odd,
    Even,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    /// Sorted variable (edge) indices with coefficient 1.
    pub support: Vec<usize>,
    pub kind: RowKind,
    /// Length of the row's circuit in the base graph.
    pub min_len: u32,
    /// Constant-term block; single-diameter systems use block 0 throughout.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub block: usize,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

/// 0/1 coefficient matrix over the base edges.
#[derive(Debug)]
pub struct GeodeticSystem {
    base: Graph,
    rows: Vec<Row>,
    base_diameter: u32,
    blocks: usize,
    elimination: OnceLock<Elimination>,
}

impl Clone for GeodeticSystem {
    fn clone(&self) -> Self {
        GeodeticSystem {
            base: self.base.clone(),
            rows: self.rows.clone(),
            base_diameter: self.base_diameter,
            blocks: self.blocks,
            elimination: OnceLock::new(),
        }
    }
}

impl PartialEq for GeodeticSystem {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.rows == other.rows
            && self.base_diameter == other.base_diameter
            && self.blocks == other.blocks
    }
}

impl GeodeticSystem {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn variable_count(&self) -> usize {
        self.base.edge_count()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn odd_rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.kind == RowKind::Odd)
    }

    pub fn even_rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.kind == RowKind::Even)
    }

    pub fn odd_count(&self) -> usize {
        self.odd_rows().count()
    }

    pub fn even_count(&self) -> usize {
        self.even_rows().count()
    }

    pub fn base_diameter(&self) -> u32 {
        self.base_diameter
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    /// Row reduction of the coefficient matrix, computed on first use.
    pub fn elimination(&self) -> &Elimination {
        self.elimination.get_or_init(|| Elimination::new(self))
    }

    pub fn rank(&self) -> usize {
        self.elimination().rank()
    }

    /// Constant terms for `rhs`, row by row.
    pub fn constants(&self, rhs: &RhsVector) -> Result<Vec<u64>, DiophError> {
        self.check_dims(rhs)?;
        let mut k = rhs.k_values.iter();
        Ok(self
            .rows
            .iter()
            .map(|r| match r.kind {
                RowKind::Odd => 2 * u64::from(*k.next().unwrap()) + 1,
                RowKind::Even => 2 * u64::from(rhs.block_diameters[r.block]) + 2,
            })
            .collect())
    }

    fn check_dims(&self, rhs: &RhsVector) -> Result<(), DiophError> {
        let want_k = self.odd_count();
        if rhs.k_values.len() != want_k || rhs.block_diameters.len() != self.blocks {
            return Err(DiophError::DimensionMismatch {
                want_k,
                got_k: rhs.k_values.len(),
                want_blocks: self.blocks,
                got_blocks: rhs.block_diameters.len(),
            });
        }
        Ok(())
    }

    /// Checks `L_j <= 2k_j + 1 <= 2D + 1` for every odd row, with `D` the
    /// diameter of the row's block.
    pub fn validate(&self, rhs: &RhsVector) -> Result<(), DiophError> {
        self.check_dims(rhs)?;
        for (row, (r, &k)) in self.odd_rows().zip(&rhs.k_values).enumerate() {
            let value = 2 * u64::from(k) + 1;
            let min = u64::from(r.min_len);
            let max = 2 * u64::from(rhs.block_diameters[r.block]) + 1;
            if value < min || value > max {
                return Err(DiophError::OddTermOutOfRange { row, value, min, max });
            }
        }
        Ok(())
    }

    /// Recovers the admissible right-hand side a length vector satisfies, if
    /// any: odd rows must have odd sums, each block's even rows one common
    /// even sum, and the bounds of [`GeodeticSystem::validate`] must hold.
    pub fn infer_rhs(&self, lengths: &[u32]) -> Result<Option<RhsVector>, DiophError> {
        if lengths.len() != self.variable_count() {
            return Err(DiophError::LengthMismatch(lengths.len(), self.variable_count()));
        }
        let sum = |r: &Row| r.support.iter().map(|&e| u64::from(lengths[e])).sum::<u64>();
        let mut k_values = Vec::with_capacity(self.odd_count());
        let mut block_even: Vec<Option<u64>> = vec![None; self.blocks];
        let mut block_odd_max = vec![0u32; self.blocks];
        for r in &self.rows {
            let s = sum(r);
            match r.kind {
                RowKind::Odd => {
                    if s % 2 == 0 {
                        return Ok(None);
                    }
                    let k = ((s - 1) / 2) as u32;
                    block_odd_max[r.block] = block_odd_max[r.block].max(k);
                    k_values.push(k);
                }
                RowKind::Even => match block_even[r.block] {
                    None if s % 2 == 0 && s >= 2 => block_even[r.block] = Some(s),
                    Some(prev) if prev == s => {}
                    _ => return Ok(None),
                },
            }
        }
        let block_diameters = block_even
            .iter()
            .zip(&block_odd_max)
            .map(|(even, &odd_k)| even.map_or(odd_k, |s| ((s - 2) / 2) as u32))
            .collect();
        let rhs = RhsVector { k_values, block_diameters };
        Ok(self.validate(&rhs).is_ok().then_some(rhs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SystemJson::from(self)).expect("system serializes")
    }
}

/// `{"variables": E, "rows": [...], "base_diameter": d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub variables: usize,
    pub rows: Vec<Row>,
    pub base_diameter: u32,
}

impl From<&GeodeticSystem> for SystemJson {
    fn from(sys: &GeodeticSystem) -> Self {
        SystemJson { variables: sys.variable_count(), rows: sys.rows.clone(), base_diameter: sys.base_diameter }
    }
}

/// Constant terms: `k_j` per odd row and one target diameter per block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RhsVector {
    pub k_values: Vec<u32>,
    pub block_diameters: Vec<u32>,
}

impl RhsVector {
    /// Single-block right-hand side with target diameter `diameter`.
    pub fn uniform(k_values: Vec<u32>, diameter: u32) -> Self {
        RhsVector { k_values, block_diameters: vec![diameter] }
    }

    /// Largest block diameter, which is the diameter of the homeomorph.
    pub fn diameter(&self) -> u32 {
        self.block_diameters.iter().copied().max().unwrap_or(0)
    }

    /// The odd constant terms `2k_j + 1`.
    pub fn odd_terms(&self) -> Vec<u32> {
        self.k_values.iter().map(|k| 2 * k + 1).collect()
    }
}

/// Odd rows from the fundamental basis of the BFS tree at `root`; even rows
/// from every even circuit of length `4..=2d+2`. For Moore graphs the only
/// such length is `2d + 2`.
pub fn build_moore_system(base: &Graph, root: Vertex) -> Result<GeodeticSystem, DiophError> {
    let tree = bfs_spanning_tree(base, root)?;
    let basis = fundamental_basis(base, &tree)?;
    let d = compute_metric(base).diameter;

    let mut rows: Vec<Row> = basis
        .circuits
        .iter()
        .map(|fc| Row {
            support: fc.circuit.edge_indices(base),
            kind: RowKind::Odd,
            min_len: fc.circuit.len() as u32,
            block: 0,
        })
        .collect();
    for len in (4..=2 * d as usize + 2).step_by(2) {
        rows.extend(circuits_of_length(base, len).iter().map(|c| Row {
            support: c.edge_indices(base),
            kind: RowKind::Even,
            min_len: len as u32,
            block: 0,
        }));
    }
    Ok(GeodeticSystem { base: base.clone(), rows, base_diameter: d, blocks: 1, elimination: OnceLock::new() })
}

/// One six-row `K4` block per 4-subset of the nodes of `K_n`, embedded in the
/// `n(n-1)/2` edge variables. Block `m` is the `m`-th 4-subset in
/// lexicographic order.
pub fn build_kn_system(n: usize) -> Result<GeodeticSystem, DiophError> {
    if n < 4 {
        return Err(DiophError::TooFewNodes(n));
    }
    let k4 = Graph::complete(4);
    let template = build_moore_system(&k4, 0)?;
    let base = Graph::complete(n);
    let mut rows = Vec::new();
    let mut block = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let nodes = [a, b, c, d];
                    let map_edge = |e: usize| {
                        let (u, v) = k4.edges()[e];
                        base.edge_index(nodes[u], nodes[v]).expect("K_n contains every pair")
                    };
                    for r in template.rows() {
                        let mut support: Vec<usize> = r.support.iter().map(|&e| map_edge(e)).collect();
                        support.sort_unstable();
                        rows.push(Row { support, kind: r.kind, min_len: r.min_len, block });
                    }
                    block += 1;
                }
            }
        }
    }
    Ok(GeodeticSystem { base, rows, base_diameter: 1, blocks: block, elimination: OnceLock::new() })
}

/// `[(n-1)^2 (n-2)^2 - 2(n-1)(n-2)] / 4`, the row count of the `K_n` system.
pub fn kn_row_formula(n: u64) -> u64 {
    let a = (n - 1) * (n - 2);
    (a * a - 2 * a) / 4
}
