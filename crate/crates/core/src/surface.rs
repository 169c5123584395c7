use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::face_sequence::FaceSequence;
use crate::map::{PolyhedralMap, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceProfile {
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
}

impl fmt::Display for SurfaceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} E={} F={} chi={} {}",
            self.vertex_count,
            self.edge_count,
            self.face_count,
            self.euler_characteristic,
            if self.orientable {
                "orientable"
            } else {
                "non-orientable"
            }
        )
    }
}

pub fn surface_profile(map: &PolyhedralMap) -> SurfaceProfile {
    let v = map.vertex_count();
    let e = map.edge_count();
    let f = map.face_count();
    SurfaceProfile {
        euler_characteristic: v as i64 - e as i64 + f as i64,
        orientable: orientation(map).is_some(),
        vertex_count: v,
        edge_count: e,
        face_count: f,
    }
}

/// A coherent orientation of the faces, if one exists.
///
/// Entry `i` is `true` when face `i` keeps its stored direction. Two faces
/// sharing an edge must traverse it in opposite directions. Each
/// face-connected component is started in the stored direction.
pub fn orientation(map: &PolyhedralMap) -> Option<Vec<bool>> {
    let faces = map.faces();
    // edge -> [(face, traverses low->high)]
    let mut by_edge: BTreeMap<(Vertex, Vertex), Vec<(usize, bool)>> = BTreeMap::new();
    for (i, face) in faces.iter().enumerate() {
        for (a, b) in face.directed_edges() {
            by_edge
                .entry(if a < b { (a, b) } else { (b, a) })
                .or_default()
                .push((i, a < b));
        }
    }
    let mut sign: Vec<Option<bool>> = vec![None; faces.len()];
    for root in 0..faces.len() {
        if sign[root].is_some() {
            continue;
        }
        sign[root] = Some(true);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let si = sign[i].unwrap();
            for (a, b) in faces[i].directed_edges() {
                let key = if a < b { (a, b) } else { (b, a) };
                let here = (a < b) == si;
                for &(j, fwd) in &by_edge[&key] {
                    if j == i {
                        continue;
                    }
                    // j must traverse the edge against face i
                    let want = fwd != here;
                    match sign[j] {
                        None => {
                            sign[j] = Some(want);
                            queue.push_back(j);
                        }
                        Some(s) if s != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Some(sign.into_iter().map(Option::unwrap).collect())
}

/// The multiset of face sizes at `v`.
pub fn face_sequence(map: &PolyhedralMap, v: Vertex) -> Result<FaceSequence> {
    if !map.contains_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    Ok(FaceSequence::from_sizes(
        map.faces()
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| f.len()),
    ))
}

/// Two vertices whose face sequences differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotSemiEquivelar {
    pub first: (Vertex, FaceSequence),
    pub second: (Vertex, FaceSequence),
}

impl fmt::Display for NotSemiEquivelar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "not semi-equivelar: vertex {} has {} but vertex {} has {}",
            self.first.0, self.first.1, self.second.0, self.second.1
        )
    }
}

/// The common face sequence of all vertices, or a witness pair that differs.
pub fn semi_equivelar_type(
    map: &PolyhedralMap,
) -> std::result::Result<FaceSequence, NotSemiEquivelar> {
    let incidence = map.vertex_faces();
    let seq =
        |v: Vertex| FaceSequence::from_sizes(incidence[v].iter().map(|&i| map.faces()[i].len()));
    let first = seq(0);
    for v in 1..map.vertex_count() {
        let here = seq(v);
        if here != first {
            return Err(NotSemiEquivelar {
                first: (0, first),
                second: (v, here),
            });
        }
    }
    Ok(first)
}

/// Whether every edge of a triangulation has an endpoint of degree `d`.
pub fn is_d_covered(map: &PolyhedralMap, d: usize) -> Result<bool> {
    if let Some(face) = map.faces().iter().find(|f| f.len() != 3) {
        return Err(Error::NotTriangulation(face.clone()));
    }
    let mut degree = vec![0usize; map.vertex_count()];
    let edges = map.edges();
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    Ok(edges.iter().all(|&(a, b)| degree[a] == d || degree[b] == d))
}
