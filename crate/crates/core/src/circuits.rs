//! Spanning trees, fundamental circuit bases and fixed-length circuit
//! enumeration.

use std::cmp::Ordering;
use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("root {root} is not a vertex of a graph with {n} vertices")]
    InvalidRoot { root: Vertex, n: usize },
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanning(String),
}

/// A simple circuit in canonical form: it starts at its smallest vertex and
/// runs in the direction whose second vertex is smaller than the last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit(Vec<Vertex>);

impl Circuit {
    /// Canonicalizes a closed vertex sequence (first vertex not repeated).
    pub fn new(mut seq: Vec<Vertex>) -> Circuit {
        let Some(min_pos) = seq.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(i, _)| i) else {
            return Circuit(seq);
        };
        seq.rotate_left(min_pos);
        if seq.len() > 2 && seq[1] > seq[seq.len() - 1] {
            seq[1..].reverse();
        }
        Circuit(seq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    /// Consecutive vertex pairs, including the closing edge, normalized `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| {
            let (a, b) = (self.0[i], self.0[(i + 1) % n]);
            (a.min(b), a.max(b))
        })
    }

    /// Sorted edge indices of the circuit in `g`.
    pub fn edge_indices(&self, g: &Graph) -> Vec<usize> {
        let mut idx: Vec<usize> = self
            .edges()
            .map(|(u, v)| g.edge_index(u, v).expect("circuit edge belongs to the graph"))
            .collect();
        idx.sort_unstable();
        idx
    }
}

impl Ord for Circuit {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Circuit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every simple circuit with `3 <= length <= max_len`, sorted by length then
/// canonical vertex sequence.
pub fn circuits_up_to(g: &Graph, max_len: usize) -> Vec<Circuit> {
    enumerate(g, 3, max_len)
}

/// Every simple circuit of exactly `len` edges, canonical and sorted.
pub fn circuits_of_length(g: &Graph, len: usize) -> Vec<Circuit> {
    enumerate(g, len, len)
}

fn enumerate(g: &Graph, min_len: usize, max_len: usize) -> Vec<Circuit> {
    let max_len = max_len.min(g.vertex_count());
    if min_len > max_len {
        return Vec::new();
    }
    let mut all: Vec<Circuit> = g
        .vertices()
        .into_par_iter()
        .flat_map_iter(|s| circuits_from(g, s, min_len, max_len))
        .collect();
    all.sort_unstable();
    all
}

/// Circuits whose smallest vertex is `s`, each found once: the DFS only
/// visits vertices above `s` and accepts the direction with
/// `path[1] < path[last]`.
fn circuits_from(g: &Graph, s: Vertex, min_len: usize, max_len: usize) -> Vec<Circuit> {
    let dist_to_s = bfs_distances(g, s);
    let mut found = Vec::new();
    let mut path = vec![s];
    let mut on_path = vec![false; g.vertex_count()];
    on_path[s] = true;

    fn dfs(
        g: &Graph,
        s: Vertex,
        range: (usize, usize),
        dist_to_s: &[usize],
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        found: &mut Vec<Circuit>,
    ) {
        let cur = *path.last().unwrap();
        let edges_so_far = path.len() - 1;
        for &w in g.neighbors(cur) {
            if w == s {
                let len = edges_so_far + 1;
                if len >= range.0 && len >= 3 && path[1] < cur {
                    found.push(Circuit(path.clone()));
                }
                continue;
            }
            // need one more edge to w, then at least dist(w, s) edges back
            if w < s || on_path[w] || edges_so_far + 1 + dist_to_s[w] > range.1 {
                continue;
            }
            path.push(w);
            on_path[w] = true;
            dfs(g, s, range, dist_to_s, path, on_path, found);
            on_path[w] = false;
            path.pop();
        }
    }

    dfs(g, s, (min_len, max_len), &dist_to_s, &mut path, &mut on_path, &mut found);
    found
}

fn bfs_distances(g: &Graph, root: Vertex) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// A rooted spanning tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
    edges: Vec<Edge>,
}

impl SpanningTree {
    /// Validates an arbitrary edge set as a spanning tree of `g`, rooted at `root`.
    pub fn from_edges(g: &Graph, root: Vertex, edges: &[Edge]) -> Result<Self, CircuitError> {
        let n = g.vertex_count();
        if root >= n {
            return Err(CircuitError::InvalidRoot { root, n });
        }
        if edges.len() + 1 != n {
            return Err(CircuitError::NotSpanning(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if !g.has_edge(u, v) {
                return Err(CircuitError::NotSpanning(format!("({u}, {v}) is not an edge of the graph")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = depth.iter().position(|&d| d == usize::MAX) {
            return Err(CircuitError::NotSpanning(format!("vertex {v} is not reached")));
        }
        let mut sorted: Vec<Edge> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        sorted.sort_unstable();
        Ok(SpanningTree { root, parent, depth, edges: sorted })
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Number of vertices at each depth.
    pub fn level_sizes(&self) -> Vec<usize> {
        let max = self.depth.iter().copied().max().unwrap_or(0);
        let mut sizes = vec![0; max + 1];
        for &d in &self.depth {
            sizes[d] += 1;
        }
        sizes
    }

    /// Tree path from `u` to `v`, both inclusive.
    pub fn path(&self, mut u: Vertex, mut v: Vertex) -> Vec<Vertex> {
        let mut left = vec![u];
        let mut right = vec![v];
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].unwrap();
            left.push(u);
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].unwrap();
            right.push(v);
        }
        while u != v {
            u = self.parent[u].unwrap();
            v = self.parent[v].unwrap();
            left.push(u);
            right.push(v);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }
}

/// Breadth-first spanning tree; neighbors are explored in ascending order,
/// so the tree realizes the distance levels from `root`.
pub fn bfs_spanning_tree(g: &Graph, root: Vertex) -> Result<SpanningTree, CircuitError> {
    let n = g.vertex_count();
    if root >= n {
        return Err(CircuitError::InvalidRoot { root, n });
    }
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                edges.push((u, w));
                queue.push_back(w);
            }
        }
    }
    SpanningTree::from_edges(g, root, &edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalCircuit {
    /// The non-tree edge that closes the circuit.
    pub chord: Edge,
    pub circuit: Circuit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitBasis {
    pub tree: SpanningTree,
    /// One circuit per non-tree edge, in sorted chord order.
    pub circuits: Vec<FundamentalCircuit>,
}

pub fn fundamental_basis(g: &Graph, tree: &SpanningTree) -> Result<CircuitBasis, CircuitError> {
    if tree.parent.len() != g.vertex_count() {
        return Err(CircuitError::NotSpanning("tree belongs to a different graph".into()));
    }
    // re-validate against g in case the tree was built for another graph
    let tree = SpanningTree::from_edges(g, tree.root, &tree.edges)?;
    let circuits = g
        .edges()
        .iter()
        .filter(|&&(u, v)| !tree.contains(u, v))
        .map(|&(u, v)| FundamentalCircuit { chord: (u, v), circuit: Circuit::new(tree.path(u, v)) })
        .collect();
    Ok(CircuitBasis { tree, circuits })
}
