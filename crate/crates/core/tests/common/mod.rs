#![allow(dead_code)]

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use semmap_core::{PolyhedralMap, Vertex};

pub fn map(n: usize, faces: &[&[Vertex]]) -> PolyhedralMap {
    PolyhedralMap::new(n, faces.iter().map(|f| f.to_vec())).unwrap()
}

pub fn random_relabel(m: &PolyhedralMap, rng: &mut StdRng) -> (PolyhedralMap, Vec<Vertex>) {
    let mut perm: Vec<Vertex> = m.vertices().collect();
    perm.shuffle(rng);
    (m.relabel(&perm), perm)
}

/// Every bijection `p` with `a.relabel(p) == b`.
pub fn brute_force_isomorphisms(a: &PolyhedralMap, b: &PolyhedralMap) -> Vec<Vec<Vertex>> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.face_count() != b.face_count() {
        return Vec::new();
    }
    (0..n)
        .permutations(n)
        .filter(|p| a.relabel(p) == *b)
        .collect()
}

/// Small closed surfaces, all with at most eight vertices.
pub fn small_maps() -> Vec<(&'static str, PolyhedralMap)> {
    let mut out = vec![
        (
            "tetrahedron",
            map(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]),
        ),
        (
            "square pyramid",
            map(
                5,
                &[
                    &[0, 1, 2, 3],
                    &[0, 1, 4],
                    &[1, 2, 4],
                    &[2, 3, 4],
                    &[3, 0, 4],
                ],
            ),
        ),
        (
            "triangular bipyramid",
            map(
                5,
                &[
                    &[0, 1, 3],
                    &[1, 2, 3],
                    &[2, 0, 3],
                    &[0, 1, 4],
                    &[1, 2, 4],
                    &[2, 0, 4],
                ],
            ),
        ),
        (
            "triangular prism",
            map(
                6,
                &[
                    &[0, 1, 2],
                    &[3, 4, 5],
                    &[0, 1, 4, 3],
                    &[1, 2, 5, 4],
                    &[2, 0, 3, 5],
                ],
            ),
        ),
        (
            "cube",
            map(
                8,
                &[
                    &[0, 1, 2, 3],
                    &[4, 5, 6, 7],
                    &[0, 1, 5, 4],
                    &[1, 2, 6, 5],
                    &[2, 3, 7, 6],
                    &[3, 0, 4, 7],
                ],
            ),
        ),
    ];
    let mut octahedron = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                octahedron.push(vec![a, b, c]);
            }
        }
    }
    out.push(("octahedron", PolyhedralMap::new(6, octahedron).unwrap()));
    for ring in [5usize, 6] {
        let faces = (0..ring).flat_map(|i| {
            let j = (i + 1) % ring;
            [vec![i, j, ring], vec![i, j, ring + 1]]
        });
        let name = if ring == 5 {
            "pentagonal bipyramid"
        } else {
            "hexagonal bipyramid"
        };
        out.push((name, PolyhedralMap::new(ring + 2, faces).unwrap()));
    }
    let torus = (0..7).flat_map(|i| {
        [
            vec![i, (i + 1) % 7, (i + 3) % 7],
            vec![i, (i + 2) % 7, (i + 3) % 7],
        ]
    });
    out.push(("seven-vertex torus", PolyhedralMap::new(7, torus).unwrap()));
    let mut antiprism = vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]];
    for i in 0..4 {
        let j = (i + 1) % 4;
        antiprism.push(vec![i, j, 4 + i]);
        antiprism.push(vec![j, 4 + j, 4 + i]);
    }
    out.push((
        "square antiprism",
        PolyhedralMap::new(8, antiprism).unwrap(),
    ));
    out
}
