use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{Face, PolyhedralMap, Vertex};
use crate::validate::{ValidationReport, Violation};

/// The faces around a vertex in cyclic order.
///
/// Corner `i` is the face between the edges to neighbours `w_i` and
/// `w_{i+1}`, stored as the path `w_i, ..., w_{i+1}` along that face
/// avoiding the centre: two vertices for a triangle, three for a
/// quadrangle. Equality identifies rotations and reflections of the cycle.
///
/// Displayed in the `C_k(...)` notation: the link polygon's `k` vertices,
/// with the path of every non-triangular corner in brackets, so the
/// standard `(3^5, 4)` link reads `C_7([2, 3, 4], 5, 6, 7, 1)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexLink {
    center: Vertex,
    corners: Vec<Vec<Vertex>>,
}

impl VertexLink {
    /// Builds a link from corner paths, checking that they chain up.
    pub fn from_corners(center: Vertex, corners: Vec<Vec<Vertex>>) -> Result<Self> {
        let bad = |reason: String| Error::BadLink {
            text: format!("{corners:?}"),
            reason,
        };
        if corners.len() < 3 {
            return Err(bad("a link needs at least three corners".into()));
        }
        for (i, c) in corners.iter().enumerate() {
            if c.len() < 2 {
                return Err(bad(format!("corner {i} is too short")));
            }
            let next = &corners[(i + 1) % corners.len()];
            if c.last() != next.first() {
                return Err(bad(format!(
                    "corner {i} does not end where corner {} starts",
                    i + 1
                )));
            }
        }
        let mut polygon: Vec<Vertex> = corners
            .iter()
            .flat_map(|c| c[..c.len() - 1].iter().copied())
            .collect();
        if polygon.contains(&center) {
            return Err(bad("the centre appears in its own link".into()));
        }
        polygon.sort_unstable();
        if polygon.windows(2).any(|w| w[0] == w[1]) {
            return Err(bad("link polygon repeats a vertex".into()));
        }
        Ok(VertexLink { center, corners })
    }

    /// Parses the bracket notation, e.g. `C_7([2,3,4],5,6,7,1)` or
    /// `[3,4,0],1,8,9,10`.
    ///
    /// A bracketed group is the path of one large face; consecutive items
    /// are joined by a triangle unless two adjacent groups share an
    /// endpoint.
    pub fn from_notation(center: Vertex, text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::BadLink {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut body = text.trim();
        if let Some(open) = body.find('(') {
            if !body.ends_with(')') {
                return Err(bad("unbalanced parentheses"));
            }
            body = &body[open + 1..body.len() - 1];
        }
        let mut items: Vec<(bool, Vec<Vertex>)> = Vec::new();
        let mut group: Option<Vec<Vertex>> = None;
        let mut token = String::new();
        let flush = |token: &mut String,
                     group: &mut Option<Vec<Vertex>>,
                     items: &mut Vec<(bool, Vec<Vertex>)>|
         -> Result<()> {
            let t = token.trim();
            if !t.is_empty() {
                let v: Vertex = t.parse().map_err(|_| bad("vertex is not an integer"))?;
                match group {
                    Some(g) => g.push(v),
                    None => items.push((false, vec![v])),
                }
            }
            token.clear();
            Ok(())
        };
        for ch in body.chars() {
            match ch {
                '[' => {
                    flush(&mut token, &mut group, &mut items)?;
                    if group.is_some() {
                        return Err(bad("nested brackets"));
                    }
                    group = Some(Vec::new());
                }
                ']' => {
                    flush(&mut token, &mut group, &mut items)?;
                    let g = group.take().ok_or_else(|| bad("unmatched ']'"))?;
                    if g.len() < 3 {
                        return Err(bad("a bracketed face path needs at least 3 vertices"));
                    }
                    items.push((true, g));
                }
                ',' | ' ' | '\t' => flush(&mut token, &mut group, &mut items)?,
                c => token.push(c),
            }
        }
        flush(&mut token, &mut group, &mut items)?;
        if group.is_some() {
            return Err(bad("unclosed '['"));
        }
        if items.is_empty() {
            return Err(bad("empty link"));
        }
        let mut corners = Vec::new();
        let k = items.len();
        for i in 0..k {
            let (is_group, ref path) = items[i];
            if is_group {
                corners.push(path.clone());
            }
            let last = *path.last().unwrap();
            let (next_group, ref next) = items[(i + 1) % k];
            let first = next[0];
            if !(is_group && next_group && first == last) {
                corners.push(vec![last, first]);
            }
        }
        VertexLink::from_corners(center, corners).map_err(|e| match e {
            Error::BadLink { reason, .. } => bad(&reason),
            other => other,
        })
    }

    pub fn center(&self) -> Vertex {
        self.center
    }

    pub fn corners(&self) -> &[Vec<Vertex>] {
        &self.corners
    }

    pub fn degree(&self) -> usize {
        self.corners.len()
    }

    /// Edge-neighbours `w_0, w_1, ...` in cyclic order.
    pub fn neighbors(&self) -> Vec<Vertex> {
        self.corners.iter().map(|c| c[0]).collect()
    }

    /// `(w_i, size of the face between w_i and w_{i+1})` around the cycle.
    pub fn cycle(&self) -> Vec<(Vertex, usize)> {
        self.corners.iter().map(|c| (c[0], c.len() + 1)).collect()
    }

    /// Cyclic sequence of face sizes.
    pub fn arrangement(&self) -> Vec<usize> {
        self.corners.iter().map(|c| c.len() + 1).collect()
    }

    /// The faces incident to the centre.
    pub fn faces(&self) -> Vec<Face> {
        self.corners
            .iter()
            .map(|c| {
                let mut cycle = vec![self.center];
                cycle.extend(c.iter().rev());
                Face::new(cycle)
            })
            .collect()
    }

    /// Number of vertices of the link polygon.
    pub fn polygon_len(&self) -> usize {
        self.corners.iter().map(|c| c.len() - 1).sum()
    }

    fn key(&self) -> Vec<Vec<Vertex>> {
        let k = self.corners.len();
        let reversed: Vec<Vec<Vertex>> = self
            .corners
            .iter()
            .rev()
            .map(|c| c.iter().rev().copied().collect())
            .collect();
        let mut best: Option<Vec<Vec<Vertex>>> = None;
        for seq in [&self.corners, &reversed] {
            for r in 0..k {
                let rotated: Vec<Vec<Vertex>> = (0..k).map(|i| seq[(r + i) % k].clone()).collect();
                if best.as_ref().is_none_or(|b| rotated < *b) {
                    best = Some(rotated);
                }
            }
        }
        best.unwrap()
    }
}

impl PartialEq for VertexLink {
    fn eq(&self, other: &Self) -> bool {
        self.center == other.center && self.key() == other.key()
    }
}

impl Eq for VertexLink {}

fn render(corners: &[Vec<Vertex>], start: usize) -> (Vec<Vertex>, Vec<String>) {
    let k = corners.len();
    let mut printed = Vec::new();
    let mut tokens = Vec::new();
    let mut printed_end: Option<Vertex> = None;
    for i in 0..k {
        let c = &corners[(start + i) % k];
        if c.len() > 2 {
            printed.extend(c.iter().copied());
            let inner: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            tokens.push(format!("[{}]", inner.join(", ")));
            printed_end = c.last().copied();
        } else {
            if printed_end != Some(c[0]) {
                printed.push(c[0]);
                tokens.push(c[0].to_string());
            }
            printed_end = None;
        }
    }
    (printed, tokens)
}

impl fmt::Display for VertexLink {
    /// Starts at a large face and reads in whichever direction and from
    /// whichever large face gives the smallest label sequence.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reversed: Vec<Vec<Vertex>> = self
            .corners
            .iter()
            .rev()
            .map(|c| c.iter().rev().copied().collect())
            .collect();
        let any_large = self.corners.iter().any(|c| c.len() > 2);
        let best = [&self.corners, &reversed]
            .into_iter()
            .flat_map(|seq| {
                (0..seq.len())
                    .filter(move |&i| !any_large || seq[i].len() > 2)
                    .map(move |i| render(seq, i))
            })
            .min()
            .unwrap();
        write!(f, "C_{}({})", self.polygon_len(), best.1.join(", "))
    }
}

/// The cyclic arrangement of faces around `v` in a valid map.
pub fn vertex_link(map: &PolyhedralMap, v: Vertex) -> Result<VertexLink> {
    if !map.contains_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    let faces = map.faces();
    let at_v: Vec<usize> = (0..faces.len()).filter(|&i| faces[i].contains(v)).collect();
    let not_cycle = |reason: &str| {
        Error::InvalidMap(ValidationReport {
            violations: vec![Violation::LinkNotCycle {
                vertex: v,
                reason: reason.to_string(),
            }],
        })
    };
    let Some(&first) = at_v.first() else {
        return Err(not_cycle("vertex lies on no face"));
    };

    // path along face `fi` from `from` to the other neighbour of v, avoiding v
    let path_from = |fi: usize, from: Vertex| -> Vec<Vertex> {
        let cyc = faces[fi].vertices();
        let len = cyc.len();
        let i = cyc.iter().position(|&x| x == v).unwrap();
        if cyc[(i + len - 1) % len] == from {
            (1..len).map(|s| cyc[(i + len - s) % len]).collect()
        } else {
            (1..len).map(|s| cyc[(i + s) % len]).collect()
        }
    };

    let (p, _) = faces[first].neighbors_of(v).unwrap();
    let mut corners = vec![path_from(first, p)];
    let mut current = first;
    loop {
        let end = *corners.last().unwrap().last().unwrap();
        let next: Vec<usize> = at_v
            .iter()
            .copied()
            .filter(|&j| j != current && faces[j].has_edge(v, end))
            .collect();
        if next.len() != 1 {
            return Err(not_cycle(
                "an edge at this vertex is not on exactly two faces",
            ));
        }
        current = next[0];
        if current == first {
            break;
        }
        if corners.len() > at_v.len() {
            return Err(not_cycle("walk does not close"));
        }
        corners.push(path_from(current, end));
    }
    if corners.len() != at_v.len() {
        return Err(not_cycle(
            "faces split into several cycles (pinched vertex)",
        ));
    }
    VertexLink::from_corners(v, corners).map_err(|_| not_cycle("link polygon is not simple"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_picks_smallest_reading() {
        let k1 = &crate::catalog::catalog_entry("K1").unwrap().map;
        assert_eq!(
            vertex_link(k1, 0).unwrap().to_string(),
            "C_7([2, 3, 4], 5, 6, 7, 1)"
        );
        let flipped = VertexLink::from_notation(0, "C_7([4, 3, 2], 1, 7, 6, 5)").unwrap();
        assert_eq!(flipped.to_string(), "C_7([2, 3, 4], 5, 6, 7, 1)");
    }

    #[test]
    fn notation_round_trip() {
        let link = VertexLink::from_notation(0, "C_7([2, 3, 4], 5, 6, 7, 1)").unwrap();
        assert_eq!(link.to_string(), "C_7([2, 3, 4], 5, 6, 7, 1)");
        assert_eq!(link.degree(), 6);
        assert_eq!(link.polygon_len(), 7);
        let mut faces = link.faces();
        faces.sort();
        let mut expected: Vec<Face> = [
            vec![0, 2, 3, 4],
            vec![0, 4, 5],
            vec![0, 5, 6],
            vec![0, 6, 7],
            vec![0, 1, 7],
            vec![0, 1, 2],
        ]
        .into_iter()
        .map(Face::new)
        .collect();
        expected.sort();
        assert_eq!(faces, expected);
    }

    #[test]
    fn link_of_two_reads_the_same_faces() {
        let link = VertexLink::from_notation(2, "([3,4,0],1,10,9,8)").unwrap();
        let faces: Vec<String> = link.faces().iter().map(|f| f.to_string()).collect();
        assert!(faces.contains(&"[0, 2, 3, 4]".to_string()));
        assert!(faces.contains(&"[0, 1, 2]".to_string()));
        assert!(faces.contains(&"[1, 2, 10]".to_string()));
        assert!(faces.contains(&"[2, 3, 8]".to_string()));
    }

    #[test]
    fn equality_up_to_rotation_and_reflection() {
        let a = VertexLink::from_notation(0, "[2,3,4],5,6,7,1").unwrap();
        let b = VertexLink::from_notation(0, "5,6,7,1,[2,3,4]").unwrap();
        let c = VertexLink::from_notation(0, "1,7,6,5,[4,3,2]").unwrap();
        let d = VertexLink::from_notation(0, "[2,3,4],5,7,6,1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn bad_notation() {
        assert!(VertexLink::from_notation(0, "1,2").is_err());
        assert!(VertexLink::from_notation(0, "[1,2,3],4,1").is_err());
        assert!(VertexLink::from_notation(0, "[1,2").is_err());
        assert!(VertexLink::from_notation(0, "1,2,0").is_err());
    }

    #[test]
    fn tetrahedron_link() {
        let tet = PolyhedralMap::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        let link = vertex_link(&tet, 0).unwrap();
        assert_eq!(link.arrangement(), vec![3, 3, 3]);
        assert_eq!(link, VertexLink::from_notation(0, "1,2,3").unwrap());
        assert!(matches!(vertex_link(&tet, 9), Err(Error::UnknownVertex(9))));
    }
}
