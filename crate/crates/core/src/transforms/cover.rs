use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::vertex_link;
use crate::map::{Face, PolyhedralMap, Vertex};
use crate::surface::orientation;
use crate::validate::validate;

/// A simplicial covering projection given on vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringWitness {
    /// `vertex_map[x]` is the base vertex under cover vertex `x`.
    pub vertex_map: Vec<Vertex>,
    pub fold: usize,
}

impl CoveringWitness {
    pub fn identity(n: usize) -> Self {
        CoveringWitness {
            vertex_map: (0..n).collect(),
            fold: 1,
        }
    }
}

/// The orientation double cover of a non-orientable map.
///
/// Cover vertex `v + n·s` is vertex `v` with sheet `s`, where the sheet
/// records which of the two rotation senses around `v` a lifted face
/// induces, measured against the link walk of `v`. Every face lifts twice,
/// once per direction, and the lifts with a common direction are coherent,
/// so the cover is orientable; it is connected exactly when the base is
/// non-orientable.
pub fn double_cover(map: &PolyhedralMap) -> Result<(PolyhedralMap, CoveringWitness)> {
    let report = validate(map);
    if !report.is_valid() {
        return Err(Error::InvalidMap(report));
    }
    if orientation(map).is_some() {
        return Err(Error::AlreadyOrientable);
    }
    let n = map.vertex_count();

    // for each vertex, the ordered (w_i, w_{i+1}) pairs of its link walk
    let mut forward: Vec<BTreeSet<(Vertex, Vertex)>> = Vec::with_capacity(n);
    for v in 0..n {
        let link = vertex_link(map, v)?;
        let nbrs = link.neighbors();
        let k = nbrs.len();
        forward.push((0..k).map(|i| (nbrs[i], nbrs[(i + 1) % k])).collect());
    }

    let mut faces = Vec::with_capacity(2 * map.face_count());
    for face in map.faces() {
        for dir in [false, true] {
            let mut cyc: Vec<Vertex> = face.vertices().to_vec();
            if dir {
                cyc.reverse();
            }
            let len = cyc.len();
            let lifted: Vec<Vertex> = (0..len)
                .map(|i| {
                    let v = cyc[i];
                    let prev = cyc[(i + len - 1) % len];
                    let next = cyc[(i + 1) % len];
                    let sheet = usize::from(!forward[v].contains(&(prev, next)));
                    v + n * sheet
                })
                .collect();
            faces.push(lifted);
        }
    }
    let cover = PolyhedralMap::new(2 * n, faces)?;
    let witness = CoveringWitness {
        vertex_map: (0..2 * n).map(|x| x % n).collect(),
        fold: 2,
    };
    Ok((cover, witness))
}

/// Checks that `witness` is a `fold`-sheeted covering `cover -> base`:
/// every base vertex has `fold` preimages, faces map onto faces of the
/// same size, and the faces around each cover vertex map bijectively onto
/// the faces around its image.
pub fn verify_covering(
    cover: &PolyhedralMap,
    base: &PolyhedralMap,
    witness: &CoveringWitness,
) -> bool {
    let phi = &witness.vertex_map;
    if phi.len() != cover.vertex_count() || witness.fold == 0 {
        return false;
    }
    if phi.iter().any(|&b| b >= base.vertex_count()) {
        return false;
    }
    let mut preimages = vec![0usize; base.vertex_count()];
    for &b in phi {
        preimages[b] += 1;
    }
    if preimages.iter().any(|&c| c != witness.fold) {
        return false;
    }

    let mut images: Vec<Face> = Vec::with_capacity(cover.face_count());
    for face in cover.faces() {
        let image: Vec<Vertex> = face.vertices().iter().map(|&x| phi[x]).collect();
        let image = Face::new(image);
        if image.has_repeated_vertex() || !base.contains_face(&image) {
            return false;
        }
        images.push(image);
    }

    let cover_inc = cover.vertex_faces();
    let base_inc = base.vertex_faces();
    for x in cover.vertices() {
        let mut around: BTreeMap<&Face, usize> = BTreeMap::new();
        for &i in &cover_inc[x] {
            *around.entry(&images[i]).or_insert(0) += 1;
        }
        let expected = &base_inc[phi[x]];
        if around.len() != expected.len() || around.values().any(|&c| c != 1) {
            return false;
        }
        if expected
            .iter()
            .any(|&j| !around.contains_key(&base.faces()[j]))
        {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face_sequence::FaceSequence;
    use crate::surface::{semi_equivelar_type, surface_profile};

    pub(crate) fn rp2_6() -> PolyhedralMap {
        PolyhedralMap::new(
            6,
            [
                [0, 1, 2],
                [0, 2, 3],
                [0, 3, 4],
                [0, 4, 5],
                [0, 5, 1],
                [1, 2, 4],
                [2, 3, 5],
                [3, 4, 1],
                [4, 5, 2],
                [5, 1, 3],
            ],
        )
        .unwrap()
    }

    #[test]
    fn projective_plane_lifts_to_the_icosahedron() {
        let base = rp2_6();
        assert!(validate(&base).is_valid());
        let p = surface_profile(&base);
        assert_eq!((p.euler_characteristic, p.orientable), (1, false));
        let (cover, witness) = double_cover(&base).unwrap();
        assert!(validate(&cover).is_valid());
        let q = surface_profile(&cover);
        assert_eq!(
            (q.vertex_count, q.euler_characteristic, q.orientable),
            (12, 2, true)
        );
        assert_eq!(
            semi_equivelar_type(&cover).unwrap(),
            "3^5".parse::<FaceSequence>().unwrap()
        );
        assert!(verify_covering(&cover, &base, &witness));
    }

    #[test]
    fn orientable_input_is_refused() {
        let tet = PolyhedralMap::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert!(matches!(double_cover(&tet), Err(Error::AlreadyOrientable)));
    }

    #[test]
    fn identity_is_a_one_fold_covering() {
        let base = rp2_6();
        assert!(verify_covering(&base, &base, &CoveringWitness::identity(6)));
    }

    #[test]
    fn wrong_witnesses_fail() {
        let base = rp2_6();
        let (cover, mut witness) = double_cover(&base).unwrap();
        witness.vertex_map.swap(0, 1);
        assert!(!verify_covering(&cover, &base, &witness));
        let bad_fold = CoveringWitness {
            vertex_map: (0..12).map(|x| x % 6).collect(),
            fold: 3,
        };
        assert!(!verify_covering(&cover, &base, &bad_fold));
    }
}
