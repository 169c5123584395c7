//! Polyhedral-map axioms.
//!
//! A map is valid when every face is a cycle of at least three distinct
//! vertices, no face is repeated, every edge lies on exactly two faces, any
//! two faces meet in nothing, a vertex or an edge, the faces around every
//! vertex close up into a single cycle of length at least three, and the
//! edge graph is connected. [`validate`] reports every violation it finds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::map::{sorted_pair, Face, PolyhedralMap, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    NoFaces,
    FaceTooShort {
        face: Face,
    },
    RepeatedVertex {
        face: Face,
    },
    DuplicateFace {
        face: Face,
        copies: usize,
    },
    EdgeMultiplicity {
        edge: (Vertex, Vertex),
        faces: usize,
    },
    BadIntersection {
        first: Face,
        second: Face,
        common: Vec<Vertex>,
    },
    IsolatedVertex {
        vertex: Vertex,
    },
    LinkNotCycle {
        vertex: Vertex,
        reason: String,
    },
    Disconnected {
        components: Vec<Vec<Vertex>>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoFaces => write!(f, "map has no faces"),
            Violation::FaceTooShort { face } => write!(f, "face {face} has fewer than 3 vertices"),
            Violation::RepeatedVertex { face } => write!(f, "face {face} repeats a vertex"),
            Violation::DuplicateFace { face, copies } => {
                write!(f, "face {face} occurs {copies} times")
            }
            Violation::EdgeMultiplicity { edge, faces } => {
                write!(
                    f,
                    "edge {}-{} lies on {faces} faces (need 2)",
                    edge.0, edge.1
                )
            }
            Violation::BadIntersection {
                first,
                second,
                common,
            } => write!(
                f,
                "faces {first} and {second} meet in {common:?}, which is not a vertex or an edge"
            ),
            Violation::IsolatedVertex { vertex } => write!(f, "vertex {vertex} lies on no face"),
            Violation::LinkNotCycle { vertex, reason } => {
                write!(f, "link of vertex {vertex} is not a cycle: {reason}")
            }
            Violation::Disconnected { components } => {
                write!(f, "edge graph has {} components", components.len())
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate(map: &PolyhedralMap) -> ValidationReport {
    let mut violations = Vec::new();
    let faces = map.faces();
    if faces.is_empty() {
        violations.push(Violation::NoFaces);
    }

    let mut well_formed = vec![true; faces.len()];
    for (i, face) in faces.iter().enumerate() {
        if face.len() < 3 {
            violations.push(Violation::FaceTooShort { face: face.clone() });
            well_formed[i] = false;
        } else if face.has_repeated_vertex() {
            violations.push(Violation::RepeatedVertex { face: face.clone() });
            well_formed[i] = false;
        }
    }

    // faces are sorted, so copies are adjacent
    let mut i = 0;
    while i < faces.len() {
        let mut j = i + 1;
        while j < faces.len() && faces[j] == faces[i] {
            j += 1;
        }
        if j - i > 1 {
            violations.push(Violation::DuplicateFace {
                face: faces[i].clone(),
                copies: j - i,
            });
        }
        i = j;
    }

    for (edge, count) in map.edge_multiplicities() {
        if count != 2 {
            violations.push(Violation::EdgeMultiplicity { edge, faces: count });
        }
    }

    let incidence = map.vertex_faces();
    let mut checked = BTreeSet::new();
    for at_v in &incidence {
        for (x, &a) in at_v.iter().enumerate() {
            for &b in &at_v[x + 1..] {
                if !well_formed[a] || !well_formed[b] || faces[a] == faces[b] {
                    continue;
                }
                if !checked.insert(sorted_pair(a, b)) {
                    continue;
                }
                if !meets_properly(&faces[a], &faces[b]) {
                    violations.push(Violation::BadIntersection {
                        first: faces[a].clone(),
                        second: faces[b].clone(),
                        common: common_vertices(&faces[a], &faces[b]),
                    });
                }
            }
        }
    }

    for v in map.vertices() {
        let here: Vec<&Face> = incidence[v]
            .iter()
            .filter(|&&i| well_formed[i])
            .map(|&i| &faces[i])
            .collect();
        if incidence[v].is_empty() {
            violations.push(Violation::IsolatedVertex { vertex: v });
            continue;
        }
        if let Err(reason) = link_is_cycle(v, &here) {
            violations.push(Violation::LinkNotCycle { vertex: v, reason });
        }
    }

    let components = edge_components(map);
    if components.len() > 1 {
        violations.push(Violation::Disconnected { components });
    }

    ValidationReport { violations }
}

pub(crate) fn common_vertices(a: &Face, b: &Face) -> Vec<Vertex> {
    let mut common: Vec<Vertex> = a
        .vertices()
        .iter()
        .copied()
        .filter(|&v| b.contains(v))
        .collect();
    common.sort_unstable();
    common
}

/// Two distinct faces meet in nothing, a single vertex, or a common edge.
pub(crate) fn meets_properly(a: &Face, b: &Face) -> bool {
    let common = common_vertices(a, b);
    match common.len() {
        0 | 1 => true,
        2 => a.has_edge(common[0], common[1]) && b.has_edge(common[0], common[1]),
        _ => false,
    }
}

/// The faces at `v` contribute one link edge each, joining the two
/// cycle-neighbours of `v`; the link must be a single cycle with at least
/// three edges.
fn link_is_cycle(v: Vertex, faces: &[&Face]) -> Result<(), String> {
    if faces.len() < 3 {
        return Err(format!("only {} faces", faces.len()));
    }
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for face in faces {
        let (p, n) = face.neighbors_of(v).expect("face contains v");
        adj.entry(p).or_default().push(n);
        adj.entry(n).or_default().push(p);
    }
    if let Some((w, nbrs)) = adj.iter().find(|(_, nbrs)| nbrs.len() != 2) {
        return Err(format!(
            "neighbour {w} meets {} faces at this vertex",
            nbrs.len()
        ));
    }
    let start = *adj.keys().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adj[&x] {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    if seen.len() != adj.len() {
        return Err("faces split into several cycles (pinched vertex)".into());
    }
    Ok(())
}

/// Connected components of the edge graph, isolated vertices included.
pub(crate) fn edge_components(map: &PolyhedralMap) -> Vec<Vec<Vertex>> {
    let n = map.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for face in map.faces() {
        for (a, b) in face.directed_edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}
