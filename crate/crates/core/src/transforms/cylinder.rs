//! Cylinder addition.
//!
//! Two vertex-disjoint faces of equal length `l` are removed and their
//! boundary cycles `v_1..v_l` and `u_1..u_l` are joined by an annulus:
//! `l` quadrangles `v_i v_{i+1} u'_{i+1} u'_i` for [`CylinderKind::Quad`],
//! or `2l` triangles `v_i v_{i+1} u'_{i+1}`, `v_i u'_{i+1} u'_i` for
//! [`CylinderKind::Tri`]. The correspondence `u'_i = u_{k ± i}` is the
//! [`Gluing`]. Each addition lowers the Euler characteristic by 2.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{automorphism_group, canonical_form, CanonicalForm, Permutation};
use crate::error::{Error, Result};
use crate::face_sequence::{sem_vertex_count, FaceSequence, VertexCount};
use crate::map::{Face, PolyhedralMap, Vertex};
use crate::surface::{semi_equivelar_type, surface_profile, SurfaceProfile};
use crate::validate::validate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CylinderKind {
    /// `C_44`: quadrangulated band between two quadrangles.
    Quad,
    /// `C_33`: triangulated band between two triangles.
    Tri,
}

impl CylinderKind {
    pub fn face_len(self) -> usize {
        match self {
            CylinderKind::Quad => 4,
            CylinderKind::Tri => 3,
        }
    }

    pub fn gluings(self) -> impl Iterator<Item = Gluing> {
        let l = self.face_len();
        (0..l).flat_map(|offset| {
            [false, true]
                .into_iter()
                .map(move |reflect| Gluing { offset, reflect })
        })
    }
}

impl std::str::FromStr for CylinderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad" | "C44" => Ok(CylinderKind::Quad),
            "tri" | "C33" => Ok(CylinderKind::Tri),
            other => Err(Error::BadCylinder(format!(
                "unknown kind {other:?} (expected quad or tri)"
            ))),
        }
    }
}

/// `u'_i = u_{(offset + i) mod l}`, or `u_{(offset - i) mod l}` when
/// reflected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gluing {
    pub offset: usize,
    pub reflect: bool,
}

/// A face of one of the input maps, in that map's own labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceRef {
    pub map: usize,
    pub face: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CylinderSpec {
    pub kind: CylinderKind,
    pub site_a: FaceRef,
    pub site_b: FaceRef,
    pub gluing: Gluing,
}

/// Disjoint union of the inputs; map `i` is shifted by the vertex counts of
/// maps `0..i`.
fn union_of(maps: &[&PolyhedralMap]) -> (PolyhedralMap, Vec<usize>) {
    let mut shifts = Vec::with_capacity(maps.len());
    let mut acc = PolyhedralMap::new(0, Vec::<Vec<Vertex>>::new()).unwrap();
    for m in maps {
        shifts.push(acc.vertex_count());
        acc = acc.disjoint_union(m);
    }
    (acc, shifts)
}

fn resolve(site: &FaceRef, maps: &[&PolyhedralMap], shifts: &[usize]) -> Result<Face> {
    let Some(map) = maps.get(site.map) else {
        return Err(Error::BadCylinder(format!(
            "face refers to map {} but only {} given",
            site.map,
            maps.len()
        )));
    };
    let face = Face::new(site.face.clone());
    if !map.contains_face(&face) {
        return Err(Error::NoSuchFace(face));
    }
    Ok(face.map_vertices(|v| v + shifts[site.map]))
}

fn band(kind: CylinderKind, a: &Face, b: &Face, gluing: Gluing) -> Vec<Vec<Vertex>> {
    let l = a.len();
    let v = a.vertices();
    let u = b.vertices();
    let glued = |i: usize| {
        let idx = if gluing.reflect {
            (gluing.offset + l - i % l) % l
        } else {
            (gluing.offset + i) % l
        };
        u[idx]
    };
    let mut out = Vec::new();
    for i in 0..l {
        let j = (i + 1) % l;
        match kind {
            CylinderKind::Quad => out.push(vec![v[i], v[j], glued(j), glued(i)]),
            CylinderKind::Tri => {
                out.push(vec![v[i], v[j], glued(j)]);
                out.push(vec![v[i], glued(j), glued(i)]);
            }
        }
    }
    out
}

fn check_sites(kind: CylinderKind, a: &Face, b: &Face, gluing: Gluing) -> Result<()> {
    let l = kind.face_len();
    if a.len() != l || b.len() != l {
        return Err(Error::BadCylinder(format!(
            "{kind:?} cylinder needs two faces of length {l}, got {a} and {b}"
        )));
    }
    if a.vertices().iter().any(|&x| b.contains(x)) {
        return Err(Error::BadCylinder(format!(
            "faces {a} and {b} share a vertex"
        )));
    }
    if gluing.offset >= l {
        return Err(Error::BadCylinder(format!(
            "offset {} must be < {l}",
            gluing.offset
        )));
    }
    Ok(())
}

/// Raw surgery on a single complex, without validating the result.
pub fn glue_cylinder(
    map: &PolyhedralMap,
    kind: CylinderKind,
    a: &Face,
    b: &Face,
    gluing: Gluing,
) -> Result<PolyhedralMap> {
    check_sites(kind, a, b, gluing)?;
    for f in [a, b] {
        if !map.contains_face(f) {
            return Err(Error::NoSuchFace(f.clone()));
        }
    }
    let mut faces: Vec<Face> = map.faces().to_vec();
    for f in [a, b] {
        let pos = faces.iter().position(|x| x == f).unwrap();
        faces.remove(pos);
    }
    faces.extend(band(kind, a, b, gluing).into_iter().map(Face::new));
    Ok(PolyhedralMap::from_normalized(map.vertex_count(), faces))
}

/// Adds one cylinder within one map or between two maps and validates
/// the result. An invalid result is returned as [`Error::InvalidMap`].
pub fn add_cylinder(maps: &[&PolyhedralMap], spec: &CylinderSpec) -> Result<PolyhedralMap> {
    add_cylinders(maps, std::slice::from_ref(spec)).map(|(m, _)| m)
}

/// Adds several cylinders in order and validates the final map. Also
/// returns the change of `V - E + F` caused by each addition.
pub fn add_cylinders(
    maps: &[&PolyhedralMap],
    specs: &[CylinderSpec],
) -> Result<(PolyhedralMap, Vec<i64>)> {
    if maps.is_empty() || maps.len() > 2 {
        return Err(Error::BadCylinder(format!(
            "cylinder addition takes one or two maps, got {}",
            maps.len()
        )));
    }
    let (mut current, shifts) = union_of(maps);
    let mut deltas = Vec::with_capacity(specs.len());
    for spec in specs {
        let a = resolve(&spec.site_a, maps, &shifts)?;
        let b = resolve(&spec.site_b, maps, &shifts)?;
        let before = surface_profile(&current).euler_characteristic;
        current = glue_cylinder(&current, spec.kind, &a, &b, spec.gluing)?;
        deltas.push(surface_profile(&current).euler_characteristic - before);
    }
    let report = validate(&current);
    if !report.is_valid() {
        return Err(Error::InvalidMap(report));
    }
    Ok((current, deltas))
}

/// All ways to cover every vertex exactly once by faces of length `len`.
pub fn face_packings(map: &PolyhedralMap, len: usize) -> Vec<Vec<Face>> {
    let n = map.vertex_count();
    let candidates: Vec<&Face> = map.faces().iter().filter(|f| f.len() == len).collect();
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, f) in candidates.iter().enumerate() {
        for &v in f.vertices() {
            by_vertex[v].push(i);
        }
    }
    let mut out = Vec::new();
    let mut covered = vec![false; n];
    let mut chosen = Vec::new();
    fn rec(
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        cands: &[&Face],
        by_vertex: &[Vec<usize>],
        out: &mut Vec<Vec<Face>>,
    ) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            out.push(chosen.iter().map(|&i| cands[i].clone()).collect());
            return;
        };
        for &i in &by_vertex[v] {
            if cands[i].vertices().iter().any(|&x| covered[x]) {
                continue;
            }
            for &x in cands[i].vertices() {
                covered[x] = true;
            }
            chosen.push(i);
            rec(covered, chosen, cands, by_vertex, out);
            chosen.pop();
            for &x in cands[i].vertices() {
                covered[x] = false;
            }
        }
    }
    if n > 0 {
        rec(&mut covered, &mut chosen, &candidates, &by_vertex, &mut out);
    }
    out
}

#[derive(Clone, Debug)]
pub struct CylinderSearchOptions {
    /// Largest number of base maps joined in one result.
    pub max_bases: usize,
    /// Stop after this many isomorphism classes.
    pub limit: Option<usize>,
    /// Skip bundles that an automorphism of the bases (or a swap of two
    /// copies of the same base) carries onto an earlier bundle.
    pub use_symmetry: bool,
    /// Keep the maps of the classes found; when false only `class_count`
    /// is filled in.
    pub keep_maps: bool,
}

impl Default for CylinderSearchOptions {
    fn default() -> Self {
        CylinderSearchOptions {
            max_bases: 2,
            limit: None,
            use_symmetry: true,
            keep_maps: true,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FoundMap {
    pub map: PolyhedralMap,
    /// Names of the base maps, in union order.
    pub bases: Vec<String>,
    pub specs: Vec<CylinderSpec>,
    pub profile: SurfaceProfile,
    #[serde(skip)]
    pub form: Option<CanonicalForm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CylinderSearch {
    pub target: FaceSequence,
    pub chi: i64,
    pub vertex_count: Option<usize>,
    pub kind: Option<CylinderKind>,
    /// Bundles that passed the local gluing checks and were built.
    pub bundles_built: usize,
    /// Built bundles that gave a valid map of the target type.
    pub valid_maps: usize,
    /// Number of isomorphism classes found.
    pub class_count: usize,
    pub classes: Vec<FoundMap>,
    /// True when `limit` stopped the search early.
    pub truncated: bool,
    pub note: Option<String>,
}

/// The cylinder kind that turns a map of type `base` into type `target`
/// when applied once at every vertex.
fn kind_for(base: &FaceSequence, target: &FaceSequence) -> Option<CylinderKind> {
    let bump = |size: usize, by: usize| {
        let mut sizes = base.expanded();
        sizes.extend(std::iter::repeat_n(size, by));
        FaceSequence::from_sizes(sizes)
    };
    if base.multiplicity(4) > 0 && bump(4, 1) == *target {
        Some(CylinderKind::Quad)
    } else if base.multiplicity(3) > 0 && bump(3, 2) == *target {
        Some(CylinderKind::Tri)
    } else {
        None
    }
}

type Bundle = Vec<(Face, Face, Gluing)>;

/// Cofacial pairs: vertices lying on a common face.
fn cofacial(map: &PolyhedralMap) -> Vec<BTreeSet<Vertex>> {
    let mut out = vec![BTreeSet::new(); map.vertex_count()];
    for f in map.faces() {
        for &a in f.vertices() {
            for &b in f.vertices() {
                if a != b {
                    out[a].insert(b);
                }
            }
        }
    }
    out
}

/// A band can only give a valid map if no two of its vertices that end up
/// on a common new face already lie on a common face.
fn band_is_locally_valid(
    kind: CylinderKind,
    a: &Face,
    b: &Face,
    g: Gluing,
    cof: &[BTreeSet<Vertex>],
) -> bool {
    band(kind, a, b, g).iter().all(|face| {
        face.iter()
            .all(|&x| !a.contains(x) || face.iter().all(|&y| a.contains(y) || !cof[x].contains(&y)))
    })
}

/// Builds every admissible cylinder bundle over the base maps and keeps
/// one representative per isomorphism class of the resulting
/// semi-equivelar maps of type `target` and Euler characteristic `chi`.
///
/// A bundle joins one or more bases (repetition allowed) whose vertex
/// counts add up to the vertex count the target requires, picks faces of
/// the cylinder length that cover every vertex exactly once, pairs them
/// up and chooses a gluing per pair.
pub fn cylinder_search(
    bases: &[(String, PolyhedralMap)],
    target: &FaceSequence,
    chi: i64,
    options: &CylinderSearchOptions,
) -> Result<CylinderSearch> {
    let mut result = CylinderSearch {
        target: target.clone(),
        chi,
        vertex_count: None,
        kind: None,
        bundles_built: 0,
        valid_maps: 0,
        class_count: 0,
        classes: Vec::new(),
        truncated: false,
        note: None,
    };
    let n_target = match sem_vertex_count(target, chi) {
        VertexCount::Exact(n) => n,
        other => {
            result.note = Some(format!(
                "no vertex count for {target} on chi={chi}: {other:?}"
            ));
            return Ok(result);
        }
    };
    result.vertex_count = Some(n_target);

    let mut usable: Vec<(usize, CylinderKind)> = Vec::new();
    for (i, (name, map)) in bases.iter().enumerate() {
        let report = validate(map);
        if !report.is_valid() {
            return Err(Error::InvalidMap(report));
        }
        let ty = semi_equivelar_type(map)
            .map_err(|e| Error::BadCylinder(format!("base {name} is not semi-equivelar: {e}")))?;
        if let Some(kind) = kind_for(&ty, target) {
            usable.push((i, kind));
        }
    }
    let Some(&(_, kind)) = usable.first() else {
        result.note = Some(format!(
            "no base map reaches {target} by one cylinder per vertex"
        ));
        return Ok(result);
    };
    if usable.iter().any(|&(_, k)| k != kind) {
        return Err(Error::BadCylinder(
            "bases need different cylinder kinds".into(),
        ));
    }
    result.kind = Some(kind);
    let l = kind.face_len();

    // multisets of usable bases with the right total vertex count
    let mut combos: Vec<Vec<usize>> = Vec::new();
    fn combos_rec(
        start: usize,
        remaining: usize,
        left: usize,
        usable: &[usize],
        bases: &[(String, PolyhedralMap)],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        if left == 0 {
            return;
        }
        for (k, &b) in usable.iter().enumerate().skip(start) {
            let n = bases[b].1.vertex_count();
            if n <= remaining {
                cur.push(b);
                combos_rec(k, remaining - n, left - 1, usable, bases, cur, out);
                cur.pop();
            }
        }
    }
    let usable_idx: Vec<usize> = usable.iter().map(|&(i, _)| i).collect();
    combos_rec(
        0,
        n_target,
        options.max_bases,
        &usable_idx,
        bases,
        &mut Vec::new(),
        &mut combos,
    );

    let mut auts: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    if options.use_symmetry {
        for &i in &usable_idx {
            auts.insert(i, automorphism_group(&bases[i].1)?.elements().to_vec());
        }
    }

    let mut seen: HashSet<Box<[u8]>> = HashSet::new();
    'combos: for combo in combos {
        let maps: Vec<&PolyhedralMap> = combo.iter().map(|&i| &bases[i].1).collect();
        let (union, shifts) = union_of(&maps);
        let symmetries = if options.use_symmetry {
            union_symmetries(&combo, &auts, &shifts, union.vertex_count())
        } else {
            Vec::new()
        };
        let cof = cofacial(&union);
        let owner = |v: Vertex| shifts.iter().rposition(|&s| s <= v).unwrap();

        // product of per-base packings
        let mut packings: Vec<Vec<Face>> = vec![Vec::new()];
        for (k, m) in maps.iter().enumerate() {
            let own = face_packings(m, l);
            let mut next = Vec::new();
            for p in &packings {
                for q in &own {
                    let mut r = p.clone();
                    r.extend(q.iter().map(|f| f.map_vertices(|v| v + shifts[k])));
                    next.push(r);
                }
            }
            packings = next;
        }

        for packing in packings {
            if packing.len() % 2 != 0 {
                continue;
            }
            let mut bundles: Vec<Bundle> = Vec::new();
            let mut used = vec![false; packing.len()];
            let mut cur: Bundle = Vec::new();
            pair_up(kind, &packing, &cof, &mut used, &mut cur, &mut bundles);
            if maps.len() > 1 {
                bundles.retain(|b| joins_all(b, maps.len(), &owner));
            }

            let built: Vec<Option<(CanonicalForm, PolyhedralMap, Bundle)>> = bundles
                .into_par_iter()
                .filter(|bundle| is_orbit_minimum(kind, bundle, &symmetries))
                .map(|bundle| {
                    let mut m = union.clone();
                    for (a, b, g) in &bundle {
                        m = glue_cylinder(&m, kind, a, b, *g).ok()?;
                    }
                    if !validate(&m).is_valid() {
                        return None;
                    }
                    if semi_equivelar_type(&m).ok()? != *target {
                        return None;
                    }
                    if surface_profile(&m).euler_characteristic != chi {
                        return None;
                    }
                    let form = canonical_form(&m).ok()?;
                    Some((form, m, bundle))
                })
                .collect();

            result.bundles_built += built.len();
            for (form, map, bundle) in built.into_iter().flatten() {
                result.valid_maps += 1;
                if !seen.insert(compact(&form)) {
                    continue;
                }
                result.class_count += 1;
                if !options.keep_maps {
                    if options.limit.is_some_and(|lim| result.class_count >= lim) {
                        result.truncated = true;
                        break 'combos;
                    }
                    continue;
                }
                let specs = bundle
                    .iter()
                    .map(|(a, b, g)| {
                        let to_ref = |f: &Face| {
                            let k = owner(f.vertices()[0]);
                            FaceRef {
                                map: k,
                                face: f.vertices().iter().map(|&v| v - shifts[k]).collect(),
                            }
                        };
                        CylinderSpec {
                            kind,
                            site_a: to_ref(a),
                            site_b: to_ref(b),
                            gluing: *g,
                        }
                    })
                    .collect();
                result.classes.push(FoundMap {
                    profile: surface_profile(&map),
                    map,
                    bases: combo.iter().map(|&i| bases[i].0.clone()).collect(),
                    specs,
                    form: Some(form),
                });
                if options.limit.is_some_and(|lim| result.class_count >= lim) {
                    result.truncated = true;
                    break 'combos;
                }
            }
        }
    }
    Ok(result)
}

fn pair_up(
    kind: CylinderKind,
    faces: &[Face],
    cof: &[BTreeSet<Vertex>],
    used: &mut Vec<bool>,
    cur: &mut Bundle,
    out: &mut Vec<Bundle>,
) {
    let Some(i) = used.iter().position(|&u| !u) else {
        out.push(cur.clone());
        return;
    };
    used[i] = true;
    for j in i + 1..faces.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        for g in kind.gluings() {
            if band_is_locally_valid(kind, &faces[i], &faces[j], g, cof) {
                cur.push((faces[i].clone(), faces[j].clone(), g));
                pair_up(kind, faces, cof, used, cur, out);
                cur.pop();
            }
        }
        used[j] = false;
    }
    used[i] = false;
}

/// Dedup key for a canonical form: one byte per word when every word fits.
fn compact(form: &CanonicalForm) -> Box<[u8]> {
    let w = form.words();
    if w.iter().all(|&x| x < 256) {
        std::iter::once(0u8)
            .chain(w.iter().map(|&x| x as u8))
            .collect()
    } else {
        std::iter::once(1u8).chain(form.to_bytes()).collect()
    }
}

/// Vertex permutations of a disjoint union generated by automorphisms of
/// the parts and by swapping parts that are copies of the same base.
/// Returns nothing (no pruning) if the group would be large.
fn union_symmetries(
    combo: &[usize],
    auts: &BTreeMap<usize, Vec<Permutation>>,
    shifts: &[usize],
    n: usize,
) -> Vec<Permutation> {
    const CAP: usize = 4096;
    // placements: which part goes where, among parts with the same base
    let mut placements: Vec<Vec<usize>> = vec![Vec::new()];
    for k in 0..combo.len() {
        let mut next = Vec::new();
        for p in &placements {
            for t in 0..combo.len() {
                if combo[t] == combo[k] && !p.contains(&t) {
                    let mut q = p.clone();
                    q.push(t);
                    next.push(q);
                }
            }
        }
        placements = next;
    }
    let size: usize = placements.len() * combo.iter().map(|b| auts[b].len()).product::<usize>();
    if size > CAP {
        return Vec::new();
    }
    let size_of = |k: usize| {
        if k + 1 < shifts.len() {
            shifts[k + 1] - shifts[k]
        } else {
            n - shifts[k]
        }
    };
    let mut out = Vec::with_capacity(size);
    for place in &placements {
        let mut perms: Vec<Permutation> = vec![vec![0; n]];
        for (k, &b) in combo.iter().enumerate() {
            let mut next = Vec::new();
            for p in &perms {
                for g in &auts[&b] {
                    let mut q = p.clone();
                    for v in 0..size_of(k) {
                        q[shifts[k] + v] = shifts[place[k]] + g[v];
                    }
                    next.push(q);
                }
            }
            perms = next;
        }
        out.extend(perms);
    }
    out
}

fn bundle_key(kind: CylinderKind, bundle: &Bundle, perm: Option<&[Vertex]>) -> Vec<Face> {
    let mut key: Vec<Face> = bundle
        .iter()
        .flat_map(|(a, b, g)| band(kind, a, b, *g))
        .map(|f| match perm {
            Some(p) => Face::new(f.into_iter().map(|v| p[v]).collect::<Vec<_>>()),
            None => Face::new(f),
        })
        .collect();
    key.sort();
    key
}

/// Whether no symmetry carries the bundle's band faces to a smaller set.
/// Bands determine the resulting map, so exactly one bundle per orbit
/// survives, and the enumeration of bundles is closed under the symmetries.
fn is_orbit_minimum(kind: CylinderKind, bundle: &Bundle, symmetries: &[Permutation]) -> bool {
    if symmetries.is_empty() {
        return true;
    }
    let own = bundle_key(kind, bundle, None);
    symmetries
        .iter()
        .all(|p| bundle_key(kind, bundle, Some(p)) >= own)
}

/// The cylinders connect all `parts` bases into one piece.
fn joins_all(bundle: &Bundle, parts: usize, owner: &impl Fn(Vertex) -> usize) -> bool {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (a, b, _) in bundle {
        let (x, y) = (owner(a.vertices()[0]), owner(b.vertices()[0]));
        adj.entry(x).or_default().push(y);
        adj.entry(y).or_default().push(x);
    }
    let mut seen = BTreeSet::from([0]);
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &y in adj.get(&x).into_iter().flatten() {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == parts
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn band_shapes() {
        let a = Face::new(vec![0, 1, 2]);
        let b = Face::new(vec![3, 4, 5]);
        let tri = band(CylinderKind::Tri, &a, &b, Gluing::default());
        assert_eq!(
            tri,
            vec![
                vec![0, 1, 4],
                vec![0, 4, 3],
                vec![1, 2, 5],
                vec![1, 5, 4],
                vec![2, 0, 3],
                vec![2, 3, 5]
            ]
        );
        let q = band(
            CylinderKind::Quad,
            &Face::new(vec![0, 1, 2, 3]),
            &Face::new(vec![4, 5, 6, 7]),
            Gluing {
                offset: 1,
                reflect: true,
            },
        );
        assert_eq!(q[0], vec![0, 1, 4, 5]);
        assert_eq!(CylinderKind::Quad.gluings().count(), 8);
        assert_eq!(CylinderKind::Tri.gluings().count(), 6);
    }

    #[test]
    fn cube_to_torus() {
        // opposite faces of the cube glued straight through: a 4x4... torus
        let cube = cube();
        let spec = CylinderSpec {
            kind: CylinderKind::Quad,
            site_a: FaceRef {
                map: 0,
                face: vec![0, 1, 2, 3],
            },
            site_b: FaceRef {
                map: 0,
                face: vec![4, 5, 6, 7],
            },
            gluing: Gluing::default(),
        };
        // vertices 0 and 4 already share an edge, so the straight gluing fails
        assert!(matches!(
            add_cylinder(&[&cube], &spec),
            Err(Error::InvalidMap(_))
        ));
    }

    #[test]
    fn bad_specs_are_rejected() {
        let cube = cube();
        let spec = CylinderSpec {
            kind: CylinderKind::Tri,
            site_a: FaceRef {
                map: 0,
                face: vec![0, 1, 2, 3],
            },
            site_b: FaceRef {
                map: 0,
                face: vec![4, 5, 6, 7],
            },
            gluing: Gluing::default(),
        };
        assert!(matches!(
            add_cylinder(&[&cube], &spec),
            Err(Error::BadCylinder(_))
        ));
        let shared = CylinderSpec {
            kind: CylinderKind::Quad,
            site_b: FaceRef {
                map: 0,
                face: vec![0, 1, 5, 4],
            },
            ..spec.clone()
        };
        assert!(matches!(
            add_cylinder(&[&cube], &shared),
            Err(Error::BadCylinder(_))
        ));
        let missing = CylinderSpec {
            kind: CylinderKind::Quad,
            site_b: FaceRef {
                map: 0,
                face: vec![4, 6, 5, 7],
            },
            ..spec
        };
        assert!(matches!(
            add_cylinder(&[&cube], &missing),
            Err(Error::NoSuchFace(_))
        ));
    }

    #[test]
    fn packings_of_the_cube() {
        // opposite-face pairs: three ways to cover all 8 vertices with 2 quads
        assert_eq!(face_packings(&cube(), 4).len(), 3);
    }
}
