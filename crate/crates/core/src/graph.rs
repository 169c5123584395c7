use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::map::{sorted_pair, PolyhedralMap, Vertex};

/// An undirected simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph, dropping loops and repeated edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = SimpleGraph::new(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// # Panics
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> bool {
        assert!(a < self.n && b < self.n, "edge ({a}, {b}) out of range");
        a != b && self.edges.insert(sorted_pair(a, b))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edges.contains(&sorted_pair(a, b))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn relabel(&self, perm: &[Vertex]) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    /// An unlabelled summary of the graph with isolated vertices ignored:
    /// for each non-trivial component, its vertex count, edge count and
    /// sorted degree sequence, the components sorted.
    ///
    /// Isomorphic graphs have equal shapes. The converse holds for the
    /// sparse forests (matchings, paths, stars) that `G_t` graphs of the
    /// catalog maps consist of.
    pub fn component_shape(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let degrees = self.degrees();
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.n];
        let mut shape = Vec::new();
        for s in 0..self.n {
            if seen[s] || adj[s].is_empty() {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            let mut degs: Vec<usize> = members.iter().map(|&v| degrees[v]).collect();
            degs.sort_unstable();
            let edges = degs.iter().sum::<usize>() / 2;
            shape.push((members.len(), edges, degs));
        }
        shape.sort();
        shape
    }
}

/// `L_K(v)`: the vertices joined to `v` by an edge of some face.
pub fn neighbor_set(map: &PolyhedralMap, v: Vertex) -> BTreeSet<Vertex> {
    let mut out = BTreeSet::new();
    for face in map.faces() {
        if let Some((p, n)) = face.neighbors_of(v) {
            out.insert(p);
            out.insert(n);
        }
    }
    out
}

/// `L_K(v)` for every vertex.
pub fn neighbor_sets(map: &PolyhedralMap) -> Vec<BTreeSet<Vertex>> {
    let mut out = vec![BTreeSet::new(); map.vertex_count()];
    for face in map.faces() {
        for (a, b) in face.directed_edges() {
            out[a].insert(b);
            out[b].insert(a);
        }
    }
    out
}

/// Which vertices count as neighbours when building `G_t`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Adjacency {
    /// Joined by an edge of some face.
    Edge,
    /// Lying on a common face, diagonals of larger faces included.
    #[default]
    Cofacial,
}

/// Every vertex sharing a face with `v`, for every `v`.
pub fn cofacial_sets(map: &PolyhedralMap) -> Vec<BTreeSet<Vertex>> {
    let mut out = vec![BTreeSet::new(); map.vertex_count()];
    for face in map.faces() {
        for &a in face.vertices() {
            for &b in face.vertices() {
                if a != b {
                    out[a].insert(b);
                }
            }
        }
    }
    out
}

fn sets_for(map: &PolyhedralMap, adjacency: Adjacency) -> Vec<BTreeSet<Vertex>> {
    match adjacency {
        Adjacency::Edge => neighbor_sets(map),
        Adjacency::Cofacial => cofacial_sets(map),
    }
}

/// For each unordered pair of vertices, the size of the intersection of
/// their neighbour sets.
pub fn common_neighbor_counts(
    map: &PolyhedralMap,
    adjacency: Adjacency,
) -> BTreeMap<(Vertex, Vertex), usize> {
    let sets = sets_for(map, adjacency);
    let n = map.vertex_count();
    let mut out = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            out.insert((a, b), sets[a].intersection(&sets[b]).count());
        }
    }
    out
}

/// `G_t(K)` with cofacial neighbourhoods: join every pair of vertices
/// (adjacent or not) whose neighbourhoods share exactly `t` vertices.
pub fn g_t_graph(map: &PolyhedralMap, t: usize) -> SimpleGraph {
    g_t_graph_with(map, t, Adjacency::Cofacial)
}

pub fn g_t_graph_with(map: &PolyhedralMap, t: usize, adjacency: Adjacency) -> SimpleGraph {
    SimpleGraph::from_edges(
        map.vertex_count(),
        common_neighbor_counts(map, adjacency)
            .into_iter()
            .filter(|&(_, c)| c == t)
            .map(|(e, _)| e),
    )
}
