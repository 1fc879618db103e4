//! Automorphism groups of small graphs and orbits of edge-length vectors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

/// Stable coloring by iterated neighbor-color multisets, starting from
/// degrees. Colors are canonical, so automorphisms preserve them.
fn refine(g: &Graph) -> Vec<usize> {
    let mut colors: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let index: BTreeMap<&(usize, Vec<usize>), usize> =
            sigs.iter().collect::<std::collections::BTreeSet<_>>().into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        let next: Vec<usize> = sigs.iter().map(|s| index[s]).collect();
        let count = index.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

/// Every automorphism of `g` as a vertex permutation `p` (`v -> p[v]`),
/// sorted lexicographically so the identity comes first.
pub fn automorphism_group(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let colors = refine(g);
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    // BFS order so every vertex after the first has an earlier neighbor
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
    }

    struct Search<'a> {
        g: &'a Graph,
        adj: Vec<Vec<bool>>,
        colors: Vec<usize>,
        order: Vec<Vertex>,
        parent: Vec<Vertex>,
        image: Vec<Vertex>,
        used: Vec<bool>,
        out: Vec<Vec<Vertex>>,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize) {
            if depth == self.order.len() {
                self.out.push(self.image.clone());
                return;
            }
            let v = self.order[depth];
            let candidates: Vec<Vertex> = if depth == 0 {
                self.g.vertices().collect()
            } else {
                self.g.neighbors(self.image[self.parent[v]]).to_vec()
            };
            for w in candidates {
                if self.used[w] || self.colors[w] != self.colors[v] {
                    continue;
                }
                let fits = self.order[..depth].iter().all(|&u| self.adj[v][u] == self.adj[w][self.image[u]]);
                if !fits {
                    continue;
                }
                self.image[v] = w;
                self.used[w] = true;
                self.run(depth + 1);
                self.used[w] = false;
            }
        }
    }

    let mut search =
        Search { g, adj, colors, order, parent, image: vec![usize::MAX; n], used: vec![false; n], out: Vec::new() };
    search.run(0);
    let mut out = search.out;
    out.sort();
    out
}

/// Permutation of edge indices induced by a vertex automorphism.
pub fn edge_permutation(g: &Graph, perm: &[Vertex]) -> Vec<usize> {
    g.edges()
        .iter()
        .map(|&(u, v)| g.edge_index(perm[u], perm[v]).expect("automorphisms map edges to edges"))
        .collect()
}

/// An orbit of length vectors under the base automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub id: usize,
    /// Lexicographically least vector of the orbit.
    pub representative: Vec<u32>,
    /// Number of input vectors in the orbit.
    pub members: usize,
}

/// Applies automorphisms to length vectors over the edges of one base graph.
#[derive(Debug, Clone)]
pub struct EdgeAction {
    edge_perms: Vec<Vec<usize>>,
}

impl EdgeAction {
    pub fn new(base: &Graph) -> Self {
        let edge_perms = automorphism_group(base).iter().map(|p| edge_permutation(base, p)).collect();
        EdgeAction { edge_perms }
    }

    pub fn group_order(&self) -> usize {
        self.edge_perms.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_perms.first().map_or(0, Vec::len)
    }

    /// Lexicographically least image of `lengths`.
    pub fn canonical(&self, lengths: &[u32]) -> Vec<u32> {
        let mut best = lengths.to_vec();
        let mut img = vec![0; lengths.len()];
        for p in &self.edge_perms {
            for (e, &l) in lengths.iter().enumerate() {
                img[p[e]] = l;
            }
            if img < best {
                best.clone_from(&img);
            }
        }
        best
    }

    /// Groups `vectors` into orbits. Returns the classes ordered by
    /// representative (`id` is the position) and the class of each input.
    pub fn orbits(&self, vectors: &[Vec<u32>]) -> (Vec<OrbitClass>, Vec<usize>) {
        let canon: Vec<Vec<u32>> = vectors.iter().map(|v| self.canonical(v)).collect();
        let mut counts: BTreeMap<&Vec<u32>, usize> = BTreeMap::new();
        for c in &canon {
            *counts.entry(c).or_default() += 1;
        }
        let classes: Vec<OrbitClass> = counts
            .iter()
            .enumerate()
            .map(|(id, (rep, &members))| OrbitClass { id, representative: (*rep).clone(), members })
            .collect();
        let ids: BTreeMap<&Vec<u32>, usize> = counts.keys().enumerate().map(|(i, r)| (*r, i)).collect();
        let assignment = canon.iter().map(|c| ids[c]).collect();
        (classes, assignment)
    }
}
