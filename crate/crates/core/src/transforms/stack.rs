use crate::map::{PolyhedralMap, Vertex};

/// Stacks every face: adds a vertex inside each face and cones it to the
/// face's boundary. Face `i` (in the map's sorted order) gets the new
/// vertex `n + i`.
pub fn stack_faces(map: &PolyhedralMap) -> PolyhedralMap {
    let n = map.vertex_count();
    let mut triangles: Vec<Vec<Vertex>> = Vec::new();
    for (i, face) in map.faces().iter().enumerate() {
        let apex = n + i;
        for (a, b) in face.directed_edges() {
            triangles.push(vec![a, b, apex]);
        }
    }
    PolyhedralMap::new(n + map.face_count(), triangles).expect("labels are in range")
}
