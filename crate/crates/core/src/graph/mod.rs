//! Undirected simple graphs with contiguous vertex ids.
//!
//! A [`Graph`] is always connected, loop-free and free of parallel edges;
//! these are checked once in [`Graph::new`] and never re-checked. Edges are
//! stored as `(u, v)` pairs with `u < v`, sorted lexicographically, and the
//! position of an edge in [`Graph::edges`] is its *edge index*. Edge-indexed
//! data (segment lengths, Diophantine variables) is always aligned with that
//! order.

mod geodetic;
mod homeomorph;
mod metric;

pub use geodetic::{
    is_geodetic_even_circuit, is_geodetic_even_circuit_with, is_geodetic_neighborhood,
    is_geodetic_neighborhood_with, is_geodetic_unique, is_geodetic_unique_with,
    GeodeticityReport, Witness,
};
pub use homeomorph::{skeleton, subdivide, Skeleton, SkeletonError};
pub use metric::{compute_metric, MetricData};

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("edge ({0}, {1}) appears more than once")]
    MultiEdge(Vertex, Vertex),
    #[error("edge ({u}, {v}) references a vertex outside [0, {n})")]
    VertexOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("graph is disconnected: no path between vertices {0} and {1}")]
    Disconnected(Vertex, Vertex),
    #[error("no segment length given for edge ({0}, {1})")]
    MissingLength(Vertex, Vertex),
    #[error("segment length of edge ({0}, {1}) must be positive")]
    NonPositiveLength(Vertex, Vertex),
    #[error("{got} segment lengths given for a graph with {expected} edges")]
    ExtraLengths { expected: usize, got: usize },
}

/// Connected undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph, normalizing each edge to `(min, max)` and sorting.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(GraphError::VertexOutOfRange { u: a, v: b, n: vertex_count });
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::MultiEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Graph { n: vertex_count, edges: normalized, adj };
        if let Some(unreached) = g.first_unreachable_from(0) {
            return Err(GraphError::Disconnected(0, unreached));
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple and connected")
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    fn first_unreachable_from(&self, root: Vertex) -> Option<Vertex> {
        if self.n == 0 {
            return None;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Returns `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Cyclomatic number |E| - |V| + 1.
    pub fn cycle_rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.n)
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v]));
        Graph::new(self.n, edges).expect("relabeling preserves simplicity and connectivity")
    }

    /// Renumbers vertices in breadth-first discovery order from `root`,
    /// visiting each vertex's neighbors in ascending id order.
    pub fn bfs_relabel(&self, root: Vertex) -> Graph {
        let mut order = Vec::with_capacity(self.n);
        let mut new_id = vec![usize::MAX; self.n];
        new_id[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adj[u] {
                if new_id[w] == usize::MAX {
                    new_id[w] = order.len();
                    order.push(w);
                }
            }
        }
        self.relabel(&new_id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphJsonError> {
        let raw: GraphJson = serde_json::from_str(text)?;
        Ok(Graph::try_from(raw)?)
    }

    /// Undirected DOT rendering with vertex ids as labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "'"));
        for v in self.vertices() {
            let _ = writeln!(out, "  {v} [label=\"{v}\"];");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// On-disk interchange form: `{"vertex_count": n, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertex_count: usize,
    pub edges: Vec<[Vertex; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            vertex_count: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(raw: GraphJson) -> Result<Self, Self::Error> {
        Graph::new(raw.vertex_count, raw.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        Graph::try_from(raw).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error)]
pub enum GraphJsonError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
