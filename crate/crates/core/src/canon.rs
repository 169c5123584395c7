//! Canonical forms, isomorphism and automorphisms.
//!
//! A *root* is a flag of the map: a vertex, a face through it and a
//! direction along that face. From a root the map is traversed
//! breadth-first over faces: each face is walked from its entry vertex in
//! its entry direction, unlabelled vertices get the next label, and the
//! faces across its edges are queued so that they traverse the shared edge
//! the other way. The traversal depends only on the root, so the relabelled
//! face list is a function of the root that commutes with isomorphisms.
//! The canonical form is the least encoding over roots.
//!
//! Roots are only taken at vertices of the rarest class of a
//! relabelling-invariant vertex colouring, which leaves the minimum
//! invariant and cuts the work by roughly `n / class size`. Combinatorial
//! automorphisms act freely on flags, so the roots attaining the minimum
//! form a single orbit and each yields exactly one automorphism.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::neighbor_sets;
use crate::map::{sorted_pair, Face, PolyhedralMap, Vertex};
use crate::validate::validate;

/// `perm[v]` is the image of vertex `v`.
pub type Permutation = Vec<Vertex>;

/// Relabelling-invariant encoding of a map: `[n, F, len_1, face_1..., ...]`
/// for the least relabelled face list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(Vec<u32>);

impl CanonicalForm {
    pub fn words(&self) -> &[u32] {
        &self.0
    }

    /// Big-endian bytes; byte order agrees with the `Ord` of the form.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|w| w.to_be_bytes()).collect()
    }

    /// The canonically labelled map itself.
    pub fn to_map(&self) -> PolyhedralMap {
        let w = &self.0;
        let n = w[0] as usize;
        let mut faces = Vec::with_capacity(w[1] as usize);
        let mut i = 2;
        while i < w.len() {
            let len = w[i] as usize;
            faces.push(Face::new(
                w[i + 1..i + 1 + len]
                    .iter()
                    .map(|&x| x as usize)
                    .collect::<Vec<_>>(),
            ));
            i += 1 + len;
        }
        PolyhedralMap::from_normalized(n, faces)
    }
}

/// The canonical form together with the relabelling that produces it.
#[derive(Clone, Debug)]
pub struct CanonicalLabeling {
    pub form: CanonicalForm,
    /// Original vertex -> canonical label, from the first minimal root.
    pub labeling: Permutation,
    /// One labelling per minimal root.
    pub minimal_labelings: Vec<Permutation>,
}

struct Traverser<'a> {
    n: usize,
    faces: &'a [Face],
    /// `across[f][i]` for the edge `cyc[i]cyc[i+1]` of face `f`: the other
    /// face `g` and the positions of `cyc[i]` and `cyc[i+1]` in `g`.
    across: Vec<Vec<(usize, usize, usize)>>,
}

impl<'a> Traverser<'a> {
    fn new(map: &'a PolyhedralMap) -> Result<Self> {
        let mut on_edge: HashMap<(Vertex, Vertex), Vec<usize>> = HashMap::new();
        for (i, face) in map.faces().iter().enumerate() {
            if face.len() < 3 || face.has_repeated_vertex() {
                return Err(Error::InvalidMap(validate(map)));
            }
            for e in face.edges() {
                on_edge.entry(e).or_default().push(i);
            }
        }
        if on_edge.values().any(|fs| fs.len() != 2) {
            return Err(Error::InvalidMap(validate(map)));
        }
        let faces = map.faces();
        let pos = |g: usize, v: Vertex| faces[g].vertices().iter().position(|&x| x == v).unwrap();
        let across = faces
            .iter()
            .enumerate()
            .map(|(f, face)| {
                let cyc = face.vertices();
                (0..cyc.len())
                    .map(|i| {
                        let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                        let pair = &on_edge[&sorted_pair(a, b)];
                        let g = if pair[0] == f { pair[1] } else { pair[0] };
                        (g, pos(g, a), pos(g, b))
                    })
                    .collect()
            })
            .collect();
        Ok(Traverser {
            n: map.vertex_count(),
            faces,
            across,
        })
    }

    /// Labelling and encoding from root `(face, start position, forward)`.
    fn run(
        &self,
        root: (usize, usize, bool),
        buf: &mut Scratch,
    ) -> Option<(Vec<u32>, Permutation)> {
        const UNSET: usize = usize::MAX;
        let mut label = vec![UNSET; self.n];
        let mut next = 0;
        buf.queued.clear();
        buf.queued.resize(self.faces.len(), false);
        buf.queue.clear();
        buf.queue.push_back(root);
        buf.queued[root.0] = true;
        while let Some((f, start, forward)) = buf.queue.pop_front() {
            let cyc = self.faces[f].vertices();
            let len = cyc.len();
            for k in 0..len {
                let p = if forward {
                    (start + k) % len
                } else {
                    (start + len - k) % len
                };
                if label[cyc[p]] == UNSET {
                    label[cyc[p]] = next;
                    next += 1;
                }
            }
            for k in 0..len {
                // step from walk[k] to walk[k + 1], entering the next face at walk[k + 1]
                let (g, entry, fwd) = if forward {
                    let i = (start + k) % len;
                    let (g, pa, pb) = self.across[f][i];
                    (g, pb, (pb + 1) % self.faces[g].len() == pa)
                } else {
                    let i = (start + 2 * len - k - 1) % len;
                    let (g, pa, pb) = self.across[f][i];
                    (g, pa, (pa + 1) % self.faces[g].len() == pb)
                };
                if !buf.queued[g] {
                    buf.queued[g] = true;
                    buf.queue.push_back((g, entry, fwd));
                }
            }
        }
        if next != self.n {
            return None;
        }

        // relabelled faces in normal form, flat
        buf.flat.clear();
        buf.spans.clear();
        for face in self.faces {
            let cyc = face.vertices();
            let len = cyc.len();
            let at = |i: usize| label[cyc[i % len]] as u32;
            let p = (0..len).min_by_key(|&i| at(i)).unwrap();
            let forward = at(p + 1) < at(p + len - 1);
            let begin = buf.flat.len();
            for k in 0..len {
                buf.flat
                    .push(if forward { at(p + k) } else { at(p + len - k) });
            }
            buf.spans.push((begin, begin + len));
        }
        let flat = &buf.flat;
        buf.spans
            .sort_unstable_by(|a, b| flat[a.0..a.1].cmp(&flat[b.0..b.1]));
        let mut enc = Vec::with_capacity(2 + flat.len() + self.faces.len());
        enc.push(self.n as u32);
        enc.push(self.faces.len() as u32);
        for &(a, b) in &buf.spans {
            enc.push((b - a) as u32);
            enc.extend_from_slice(&flat[a..b]);
        }
        Some((enc, label))
    }
}

#[derive(Default)]
struct Scratch {
    queued: Vec<bool>,
    queue: VecDeque<(usize, usize, bool)>,
    flat: Vec<u32>,
    spans: Vec<(usize, usize)>,
}

/// Ranks `keys` densely by their sorted order, so equal keys share a rank
/// and the ranks do not depend on vertex labels.
fn rank<K: Ord>(keys: &[K]) -> Vec<usize> {
    let sorted: BTreeMap<&K, usize> = {
        let mut m: BTreeMap<&K, usize> = keys.iter().map(|k| (k, 0)).collect();
        for (i, v) in m.values_mut().enumerate() {
            *v = i;
        }
        m
    };
    keys.iter().map(|k| sorted[k]).collect()
}

/// Per-vertex colour that no relabelling can change. Starts from the
/// degree, the sorted sizes of the incident faces and the sorted
/// common-neighbour counts, then refines by the colours of neighbours and
/// of incident faces until the partition stops splitting.
fn vertex_colors(map: &PolyhedralMap) -> Vec<usize> {
    let sets = neighbor_sets(map);
    let n = map.vertex_count();
    let words = n.div_ceil(64);
    let mut bits = vec![0u64; n * words];
    for (v, set) in sets.iter().enumerate() {
        for &w in set {
            bits[v * words + w / 64] |= 1 << (w % 64);
        }
    }
    let row = |v: usize| &bits[v * words..(v + 1) * words];
    let incidence = map.vertex_faces();
    let initial: Vec<(usize, Vec<usize>, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut sizes: Vec<usize> =
                incidence[v].iter().map(|&i| map.faces()[i].len()).collect();
            sizes.sort_unstable();
            let mut counts: Vec<u32> = (0..n)
                .filter(|&w| w != v)
                .map(|w| {
                    row(v)
                        .iter()
                        .zip(row(w))
                        .map(|(x, y)| (x & y).count_ones())
                        .sum()
                })
                .collect();
            counts.sort_unstable();
            (sets[v].len(), sizes, counts)
        })
        .collect();
    let mut color = rank(&initial);
    let mut classes = color.iter().max().map_or(0, |m| m + 1);
    loop {
        let keys: Vec<(usize, Vec<usize>, Vec<Vec<usize>>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = sets[v].iter().map(|&w| color[w]).collect();
                nb.sort_unstable();
                let mut around: Vec<Vec<usize>> = incidence[v]
                    .iter()
                    .map(|&i| {
                        let mut c: Vec<usize> = map.faces()[i]
                            .vertices()
                            .iter()
                            .map(|&w| color[w])
                            .collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                around.sort();
                (color[v], nb, around)
            })
            .collect();
        let refined = rank(&keys);
        let count = refined.iter().max().map_or(0, |m| m + 1);
        color = refined;
        if count == classes {
            return color;
        }
        classes = count;
    }
}

pub(crate) fn min_necklace(seq: &[usize]) -> Vec<usize> {
    let k = seq.len();
    let mut best: Option<Vec<usize>> = None;
    let rev: Vec<usize> = seq.iter().rev().copied().collect();
    for s in [seq, &rev[..]] {
        for r in 0..k {
            let cand: Vec<usize> = (0..k).map(|i| s[(r + i) % k]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn roots(map: &PolyhedralMap) -> Vec<(usize, usize, bool)> {
    let colors = vertex_colors(map);
    let mut classes: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        classes.entry(c).or_default().push(v);
    }
    let (_, chosen) = classes
        .iter()
        .min_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.0.cmp(b.0)))
        .expect("map has vertices");
    let mut out = Vec::new();
    for &v in chosen {
        for (i, face) in map.faces().iter().enumerate() {
            if let Some(pos) = face.vertices().iter().position(|&x| x == v) {
                out.push((i, pos, true));
                out.push((i, pos, false));
            }
        }
    }
    out
}

/// Canonical form and the relabellings attaining it.
///
/// Fails with [`Error::InvalidMap`] unless every face is a proper cycle,
/// every edge lies on exactly two faces and the map is connected.
pub fn canonical_labeling(map: &PolyhedralMap) -> Result<CanonicalLabeling> {
    if map.vertex_count() == 0 || map.face_count() == 0 {
        return Err(Error::InvalidMap(validate(map)));
    }
    let trav = Traverser::new(map)?;
    let mut best: Option<Vec<u32>> = None;
    let mut minimal = Vec::new();
    let mut buf = Scratch::default();
    for root in roots(map) {
        let Some((enc, label)) = trav.run(root, &mut buf) else {
            return Err(Error::InvalidMap(validate(map)));
        };
        match best.as_ref().map(|b| enc.cmp(b)) {
            None | Some(std::cmp::Ordering::Less) => {
                best = Some(enc);
                minimal.clear();
                minimal.push(label);
            }
            Some(std::cmp::Ordering::Equal) => minimal.push(label),
            Some(std::cmp::Ordering::Greater) => {}
        }
    }
    Ok(CanonicalLabeling {
        form: CanonicalForm(best.unwrap()),
        labeling: minimal[0].clone(),
        minimal_labelings: minimal,
    })
}

pub fn canonical_form(map: &PolyhedralMap) -> Result<CanonicalForm> {
    canonical_labeling(map).map(|c| c.form)
}

fn invert(p: &[Vertex]) -> Permutation {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn compose(outer: &[Vertex], inner: &[Vertex]) -> Permutation {
    inner.iter().map(|&x| outer[x]).collect()
}

/// Whether the two maps are isomorphic; if so, a bijection `w` with
/// `a.relabel(w) == b`, checked against the face sets before returning.
pub fn are_isomorphic(a: &PolyhedralMap, b: &PolyhedralMap) -> Result<Option<Permutation>> {
    if a.vertex_count() != b.vertex_count() || a.face_count() != b.face_count() {
        return Ok(None);
    }
    let ca = canonical_labeling(a)?;
    let cb = canonical_labeling(b)?;
    if ca.form != cb.form {
        return Ok(None);
    }
    let witness = compose(&invert(&cb.labeling), &ca.labeling);
    assert!(
        a.relabel(&witness) == *b,
        "canonical forms agree but the witness is not an isomorphism"
    );
    Ok(Some(witness))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismGroup {
    pub generators: Vec<Permutation>,
    pub order: usize,
    pub orbits: Vec<Vec<Vertex>>,
    #[serde(skip)]
    elements: Vec<Permutation>,
}

impl AutomorphismGroup {
    /// Every automorphism, identity first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits.len() == 1
    }
}

fn closure(generators: &[Permutation], n: usize) -> std::collections::HashSet<Permutation> {
    let id: Permutation = (0..n).collect();
    let mut seen = std::collections::HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(p) = stack.pop() {
        for g in generators {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                stack.push(q);
            }
        }
    }
    seen
}

pub fn automorphism_group(map: &PolyhedralMap) -> Result<AutomorphismGroup> {
    let canon = canonical_labeling(map)?;
    let n = map.vertex_count();
    let inv0 = invert(&canon.labeling);
    let mut elements: Vec<Permutation> = canon
        .minimal_labelings
        .iter()
        .map(|l| compose(&inv0, l))
        .collect();
    elements.sort();
    elements.dedup();
    for g in &elements {
        assert!(
            map.relabel(g) == *map,
            "minimal root produced a non-automorphism"
        );
    }
    let id: Permutation = (0..n).collect();
    if let Some(pos) = elements.iter().position(|p| *p == id) {
        elements.swap(0, pos);
    }

    let mut generators: Vec<Permutation> = Vec::new();
    let mut generated = closure(&generators, n);
    for g in &elements {
        if !generated.contains(g) {
            generators.push(g.clone());
            generated = closure(&generators, n);
        }
    }

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for g in &generators {
        for (x, &y) in g.iter().enumerate() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let mut orbits: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        orbits.entry(r).or_default().push(v);
    }
    Ok(AutomorphismGroup {
        generators,
        order: elements.len(),
        orbits: orbits.into_values().collect(),
        elements,
    })
}

pub fn is_vertex_transitive(map: &PolyhedralMap) -> Result<bool> {
    automorphism_group(map).map(|g| g.is_transitive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> PolyhedralMap {
        PolyhedralMap::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    fn cube() -> PolyhedralMap {
        PolyhedralMap::new(
            8,
            [
                [0, 1, 2, 3],
                [4, 5, 6, 7],
                [0, 1, 5, 4],
                [1, 2, 6, 5],
                [2, 3, 7, 6],
                [3, 0, 4, 7],
            ],
        )
        .unwrap()
    }

    #[test]
    fn tetrahedron_group_is_s4() {
        let g = automorphism_group(&tetrahedron()).unwrap();
        assert_eq!(g.order, 24);
        assert_eq!(g.orbits, vec![vec![0, 1, 2, 3]]);
        assert_eq!(closure(&g.generators, 4).len(), 24);
    }

    #[test]
    fn cube_group_has_order_48() {
        let g = automorphism_group(&cube()).unwrap();
        assert_eq!(g.order, 48);
        assert!(g.is_transitive());
    }

    #[test]
    fn canonical_form_round_trips_to_an_isomorphic_map() {
        let c = cube();
        let form = canonical_form(&c).unwrap();
        let back = form.to_map();
        assert_eq!(canonical_form(&back).unwrap(), form);
        assert!(are_isomorphic(&c, &back).unwrap().is_some());
        assert_eq!(form.to_bytes().len(), form.words().len() * 4);
    }

    #[test]
    fn invalid_maps_are_refused() {
        let open = PolyhedralMap::new(3, [[0, 1, 2]]).unwrap();
        assert!(matches!(canonical_form(&open), Err(Error::InvalidMap(_))));
        let t = tetrahedron();
        assert!(matches!(
            canonical_form(&t.disjoint_union(&t)),
            Err(Error::InvalidMap(_))
        ));
    }

    #[test]
    fn necklace_normal_form() {
        assert_eq!(min_necklace(&[4, 3, 3, 4, 3]), vec![3, 3, 4, 3, 4]);
        assert_eq!(min_necklace(&[3, 4, 3, 3, 3, 3]), vec![3, 3, 3, 3, 3, 4]);
    }
}
