use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertices are dense labels `0..n`.
pub type Vertex = usize;

/// A face: a cyclic sequence of vertices, stored in a normal form that
/// identifies rotations and reflections of the same cycle.
///
/// The normal form is the lexicographically least of the `2·len` readings
/// of the cycle, so it starts at the smallest vertex and then steps towards
/// the smaller of its two neighbours.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<Vertex>);

impl Face {
    pub fn new(cycle: impl Into<Vec<Vertex>>) -> Self {
        let cycle = cycle.into();
        let len = cycle.len();
        if len == 0 {
            return Face(cycle);
        }
        let mut best: Option<Vec<Vertex>> = None;
        for start in 0..len {
            for forward in [true, false] {
                let reading: Vec<Vertex> = (0..len)
                    .map(|i| {
                        let idx = if forward {
                            (start + i) % len
                        } else {
                            (start + len - i) % len
                        };
                        cycle[idx]
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| reading < *b) {
                    best = Some(reading);
                }
            }
        }
        Face(best.unwrap())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    /// Boundary edges in traversal order, each as an ordered pair `(a, b)`
    /// with `a` preceding `b` in the stored cyclic order.
    pub fn directed_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let len = self.0.len();
        (0..len).map(move |i| (self.0[i], self.0[(i + 1) % len]))
    }

    /// Boundary edges as sorted pairs.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.directed_edges().map(|(a, b)| sorted_pair(a, b))
    }

    /// The two cycle-neighbours of `v` in this face, as `(previous, next)`
    /// in the stored direction.
    pub fn neighbors_of(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        let len = self.0.len();
        let i = self.0.iter().position(|&x| x == v)?;
        Some((self.0[(i + len - 1) % len], self.0[(i + 1) % len]))
    }

    /// Whether `a` and `b` are consecutive on this face.
    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.neighbors_of(a).is_some_and(|(p, n)| p == b || n == b)
    }

    pub fn has_repeated_vertex(&self) -> bool {
        let set: BTreeSet<_> = self.0.iter().collect();
        set.len() != self.0.len()
    }

    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> Face {
        Face::new(self.0.iter().map(|&v| f(v)).collect::<Vec<_>>())
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn sorted_pair(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A finite 2-dimensional polyhedral complex given by its faces.
///
/// Construction only checks that faces reference declared vertices; the
/// polyhedral-map axioms are checked by [`crate::validate`]. Faces are kept
/// in normal form and sorted, so two maps compare equal exactly when they
/// have the same labelled face set (with multiplicity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyhedralMap {
    n: usize,
    faces: Vec<Face>,
}

impl PolyhedralMap {
    pub fn new<I, F>(n: usize, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: Into<Vec<Vertex>>,
    {
        let mut out = Vec::new();
        for face in faces {
            let face: Vec<Vertex> = face.into();
            if let Some(&vertex) = face.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            out.push(Face::new(face));
        }
        out.sort();
        Ok(PolyhedralMap { n, faces: out })
    }

    pub(crate) fn from_normalized(n: usize, mut faces: Vec<Face>) -> Self {
        faces.sort();
        PolyhedralMap { n, faces }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v < self.n
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.faces.binary_search(face).is_ok()
    }

    /// Number of faces containing each edge.
    pub fn edge_multiplicities(&self) -> BTreeMap<(Vertex, Vertex), usize> {
        let mut counts = BTreeMap::new();
        for face in &self.faces {
            for e in face.edges() {
                *counts.entry(e).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Distinct edges, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.edge_multiplicities().into_keys().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_multiplicities().len()
    }

    /// Indices of the faces containing each vertex.
    pub fn vertex_faces(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (i, face) in self.faces.iter().enumerate() {
            for &v in face.vertices() {
                if out[v].last() != Some(&i) {
                    out[v].push(i);
                }
            }
        }
        out
    }

    /// Vertex degree in the edge graph.
    pub fn degree(&self, v: Vertex) -> usize {
        crate::graph::neighbor_set(self, v).len()
    }

    /// The map obtained by sending vertex `v` to `perm[v]`.
    ///
    /// # Panics
    ///
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[Vertex]) -> PolyhedralMap {
        assert_eq!(perm.len(), self.n, "permutation length");
        let faces = self
            .faces
            .iter()
            .map(|f| f.map_vertices(|v| perm[v]))
            .collect();
        PolyhedralMap::from_normalized(self.n, faces)
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &PolyhedralMap) -> PolyhedralMap {
        let shift = self.n;
        let faces = self
            .faces
            .iter()
            .cloned()
            .chain(other.faces.iter().map(|f| f.map_vertices(|v| v + shift)))
            .collect();
        PolyhedralMap::from_normalized(self.n + other.n, faces)
    }

    /// The same map with `face` removed (one copy), used by deletion tests
    /// and surgery.
    pub fn without_face(&self, index: usize) -> PolyhedralMap {
        let mut faces = self.faces.clone();
        faces.remove(index);
        PolyhedralMap { n: self.n, faces }
    }

    /// Every face a triangle.
    pub fn is_triangulation(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 3)
    }
}
