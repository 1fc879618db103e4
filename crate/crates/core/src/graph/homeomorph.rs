//! Subdivision and its inverse.

use thiserror::Error;

use super::{Edge, Graph, GraphError, Vertex};

/// Replaces edge `e` by a path of `lengths[e]` edges.
///
/// `lengths` is aligned with `g.edges()`. Fresh vertices are numbered from
/// `g.vertex_count()` upward, edge by edge in sorted edge order, each path
/// running from the smaller endpoint to the larger.
pub fn subdivide(g: &Graph, lengths: &[u32]) -> Result<Graph, GraphError> {
    let edges = g.edges();
    if lengths.len() < edges.len() {
        let (u, v) = edges[lengths.len()];
        return Err(GraphError::MissingLength(u, v));
    }
    if lengths.len() > edges.len() {
        return Err(GraphError::ExtraLengths { expected: edges.len(), got: lengths.len() });
    }
    if let Some(i) = lengths.iter().position(|&a| a == 0) {
        let (u, v) = edges[i];
        return Err(GraphError::NonPositiveLength(u, v));
    }

    let extra: usize = lengths.iter().map(|&a| a as usize - 1).sum();
    let mut next = g.vertex_count();
    let mut out = Vec::with_capacity(g.edge_count() + extra);
    for (&(u, v), &a) in edges.iter().zip(lengths) {
        let mut prev = u;
        for _ in 1..a {
            out.push((prev, next));
            prev = next;
            next += 1;
        }
        out.push((prev, v));
    }
    Graph::new(next, out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeletonError {
    #[error("vertex {0} has degree 1; skeletons need minimum degree 2")]
    PendantVertex(Vertex),
    #[error("nodes {0} and {1} are joined by more than one segment")]
    ParallelSegments(Vertex, Vertex),
    #[error("a segment starting at node {0} returns to it")]
    LoopSegment(Vertex),
}

/// Result of smoothing away every degree-2 vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Skeleton {
    /// The node graph with one edge per segment.
    Reduced {
        base: Graph,
        /// Segment length per base edge, aligned with `base.edges()`.
        lengths: Vec<u32>,
        /// `nodes[i]` is the vertex of the input graph that became base vertex `i`.
        nodes: Vec<Vertex>,
        /// Vertex sequence of each segment in the input graph, from the node
        /// mapped to the smaller base id to the other.
        segments: Vec<Vec<Vertex>>,
    },
    /// The input graph is a single circuit of the given length.
    Cycle(usize),
}

/// Contracts every maximal path of degree-2 vertices into one weighted edge.
/// Nodes (degree >= 3) keep their relative order.
pub fn skeleton(g: &Graph) -> Result<Skeleton, SkeletonError> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) < 2) {
        return Err(SkeletonError::PendantVertex(v));
    }
    let nodes: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    if nodes.is_empty() {
        return Ok(Skeleton::Cycle(g.vertex_count()));
    }
    let mut base_id = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in nodes.iter().enumerate() {
        base_id[v] = i;
    }

    let mut found: Vec<(Edge, Vec<Vertex>)> = Vec::new();
    for &start in &nodes {
        for &first in g.neighbors(start) {
            let mut path = vec![start, first];
            let (mut prev, mut cur) = (start, first);
            while base_id[cur] == usize::MAX {
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
                path.push(cur);
            }
            if cur == start {
                return Err(SkeletonError::LoopSegment(start));
            }
            let (a, b) = (base_id[start], base_id[cur]);
            // each segment is walked once from each end
            if a < b {
                found.push(((a, b), path));
            }
        }
    }
    found.sort_by_key(|x| x.0);
    if let Some(w) = found.windows(2).find(|w| w[0].0 == w[1].0) {
        let (a, b) = w[0].0;
        return Err(SkeletonError::ParallelSegments(nodes[a], nodes[b]));
    }
    let base = Graph::new(nodes.len(), found.iter().map(|(e, _)| *e))
        .expect("segments of a connected graph form a connected node graph");
    let lengths = found.iter().map(|(_, p)| (p.len() - 1) as u32).collect();
    let segments = found.into_iter().map(|(_, p)| p).collect();
    Ok(Skeleton::Reduced { base, lengths, nodes, segments })
}
