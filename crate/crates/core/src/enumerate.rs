//! Isomorph-free exhaustive generation of semi-equivelar maps.
//!
//! The search fixes the link of vertex 0 (one run per cyclic arrangement
//! of the target face sequence), then repeatedly picks the incomplete
//! vertex with the most committed faces, takes one of its edges that lies
//! on a single face so far, and branches over every face that could sit on
//! the other side of that edge. Vertices that have not appeared yet are
//! interchangeable, so a branch only ever introduces the smallest unused
//! label. Each commit checks the local axioms (edge on at most two faces,
//! proper face intersections, face-size budget per vertex, and that a link
//! only closes up once it holds the full face sequence). Complete maps are
//! validated and deduplicated by canonical form.

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, min_necklace, CanonicalForm};
use crate::error::{Error, Result};
use crate::face_sequence::{sem_vertex_count, FaceSequence, VertexCount};
use crate::link::VertexLink;
use crate::map::{Face, PolyhedralMap, Vertex};
use crate::surface::semi_equivelar_type;
use crate::validate::validate;

/// Why a branch was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contradiction(pub String);

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Contradiction {}

fn contradiction<T>(msg: impl Into<String>) -> std::result::Result<T, Contradiction> {
    Err(Contradiction(msg.into()))
}

/// A partially built map on a fixed vertex budget.
#[derive(Clone, Debug)]
pub struct PartialMap {
    n: usize,
    degree: usize,
    sizes: Vec<usize>,
    mults: Vec<u8>,
    faces: Vec<Vec<Vertex>>,
    edge_use: Vec<u8>,
    at: Vec<Vec<u32>>,
    size_use: Vec<u8>,
    complete: Vec<bool>,
    used: Vec<bool>,
}

impl PartialMap {
    pub fn new(target: &FaceSequence, n: usize) -> Self {
        let sizes: Vec<usize> = target.sizes().collect();
        let mults = target.entries().iter().map(|&(_, p)| p as u8).collect();
        PartialMap {
            n,
            degree: target.degree(),
            mults,
            faces: Vec::new(),
            edge_use: vec![0; n * n],
            at: vec![Vec::new(); n],
            size_use: vec![0; n * sizes.len()],
            complete: vec![false; n],
            used: vec![false; n],
            sizes,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().map(|f| Face::new(f.clone()))
    }

    pub fn is_complete(&self, v: Vertex) -> bool {
        self.complete[v]
    }

    fn edge(&self, a: Vertex, b: Vertex) -> u8 {
        self.edge_use[a * self.n + b]
    }

    fn neighbors_in(face: &[Vertex], v: Vertex) -> (Vertex, Vertex) {
        let len = face.len();
        let i = face.iter().position(|&x| x == v).unwrap();
        (face[(i + len - 1) % len], face[(i + 1) % len])
    }

    fn has_face(&self, face: &Face) -> bool {
        let v = face.vertices()[0];
        v < self.n
            && self.at[v]
                .iter()
                .any(|&i| Face::new(self.faces[i as usize].clone()) == *face)
    }

    /// Whether the link of `v` already joins `a` to `b` through faces at `v`.
    fn link_connects(&self, v: Vertex, a: Vertex, b: Vertex) -> bool {
        let mut x = a;
        let mut came: Option<u32> = None;
        loop {
            let next = self.at[v].iter().copied().find(|&fi| {
                Some(fi) != came && {
                    let (p, q) = Self::neighbors_in(&self.faces[fi as usize], v);
                    p == x || q == x
                }
            });
            let Some(fi) = next else {
                return false;
            };
            let (p, q) = Self::neighbors_in(&self.faces[fi as usize], v);
            x = if p == x { q } else { p };
            came = Some(fi);
            if x == b {
                return true;
            }
            if x == a {
                return false;
            }
        }
    }

    /// Adds one face, checking every local axiom.
    pub fn commit(&mut self, face: &[Vertex]) -> std::result::Result<(), Contradiction> {
        let len = face.len();
        let Some(si) = self.sizes.iter().position(|&s| s == len) else {
            return contradiction(format!("face size {len} not in the target type"));
        };
        for (i, &v) in face.iter().enumerate() {
            if v >= self.n {
                return contradiction(format!("vertex {v} beyond the budget of {}", self.n));
            }
            if face[..i].contains(&v) {
                return contradiction("face repeats a vertex");
            }
            if self.complete[v] {
                return contradiction(format!("vertex {v} is already complete"));
            }
            if self.at[v].len() >= self.degree {
                return contradiction(format!("vertex {v} has too many faces"));
            }
            if self.size_use[v * self.sizes.len() + si] >= self.mults[si] {
                return contradiction(format!("vertex {v} has too many {len}-gons"));
            }
        }
        for i in 0..len {
            let (a, b) = (face[i], face[(i + 1) % len]);
            if self.edge(a, b) >= 2 {
                return contradiction(format!("edge {a}-{b} would lie on three faces"));
            }
        }
        let new_face = Face::new(face.to_vec());
        let mut checked: Vec<u32> = Vec::new();
        for &v in face {
            for &fi in &self.at[v] {
                if checked.contains(&fi) {
                    continue;
                }
                checked.push(fi);
                let other = Face::new(self.faces[fi as usize].clone());
                if other == new_face || !crate::validate::meets_properly(&new_face, &other) {
                    return contradiction(format!("faces {new_face} and {other} meet badly"));
                }
            }
        }
        let mut closes = Vec::with_capacity(len);
        for &v in face {
            let (a, b) = Self::neighbors_in(face, v);
            let count = self.at[v].len() + 1;
            let closed = self.link_connects(v, a, b);
            if closed {
                let exact = (0..self.sizes.len()).all(|k| {
                    let used = self.size_use[v * self.sizes.len() + k] + u8::from(k == si);
                    used == self.mults[k]
                });
                if count != self.degree || !exact {
                    return contradiction(format!("link of {v} closes early"));
                }
            } else if count == self.degree {
                return contradiction(format!("link of {v} is full but open"));
            }
            closes.push(closed);
        }

        let fi = self.faces.len() as u32;
        for i in 0..len {
            let (a, b) = (face[i], face[(i + 1) % len]);
            self.edge_use[a * self.n + b] += 1;
            self.edge_use[b * self.n + a] += 1;
        }
        for (&v, closed) in face.iter().zip(closes) {
            self.at[v].push(fi);
            self.size_use[v * self.sizes.len() + si] += 1;
            self.used[v] = true;
            self.complete[v] = closed;
        }
        self.faces.push(face.to_vec());
        Ok(())
    }

    /// Commits every face the link implies; faces already present are
    /// left alone, so asserting a committed link changes nothing.
    pub fn assume_link(&self, link: &VertexLink) -> std::result::Result<PartialMap, Contradiction> {
        let mut next = self.clone();
        for face in link.faces() {
            if next.has_face(&face) {
                continue;
            }
            next.commit(face.vertices())?;
        }
        Ok(next)
    }

    /// The edge to branch on: an edge on a single face at the incomplete
    /// vertex with the most faces.
    fn open_edge(&self) -> Option<(Vertex, Vertex)> {
        let v = (0..self.n)
            .filter(|&v| !self.complete[v] && !self.at[v].is_empty())
            .max_by_key(|&v| (self.at[v].len(), std::cmp::Reverse(v)))?;
        let mut best: Option<Vertex> = None;
        for &fi in &self.at[v] {
            let (p, q) = Self::neighbors_in(&self.faces[fi as usize], v);
            for w in [p, q] {
                if self.edge(v, w) == 1 && best.is_none_or(|b| w < b) {
                    best = Some(w);
                }
            }
        }
        best.map(|w| (v, w))
    }

    /// Candidate faces through the open edge `v-w`, as cycles
    /// `v, w, x_1, ..., x_{s-2}`.
    fn candidates(&self, v: Vertex, w: Vertex) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        let k = self.sizes.len();
        for (si, &s) in self.sizes.iter().enumerate() {
            if self.size_use[v * k + si] >= self.mults[si]
                || self.size_use[w * k + si] >= self.mults[si]
            {
                continue;
            }
            let mut cycle = vec![v, w];
            self.extend(&mut cycle, s, &mut out);
        }
        out
    }

    fn extend(&self, cycle: &mut Vec<Vertex>, s: usize, out: &mut Vec<Vec<Vertex>>) {
        if cycle.len() == s {
            let last = *cycle.last().unwrap();
            if self.edge(last, cycle[0]) < 2 {
                out.push(cycle.clone());
            }
            return;
        }
        let prev = *cycle.last().unwrap();
        let fresh = (0..self.n).find(|&x| !self.used[x] && !cycle.contains(&x));
        for x in 0..self.n {
            let ok = if self.used[x] {
                !self.complete[x] && !cycle.contains(&x) && self.edge(prev, x) < 2
            } else {
                Some(x) == fresh
            };
            if ok {
                cycle.push(x);
                self.extend(cycle, s, out);
                cycle.pop();
            }
        }
    }

    fn to_map(&self) -> PolyhedralMap {
        PolyhedralMap::new(self.n, self.faces.iter().cloned()).expect("labels within budget")
    }
}

/// How the root of the search is fixed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedMode {
    /// The full link of vertex 0, once per cyclic arrangement of the type.
    #[default]
    Link,
    /// A single face of the largest size through vertex 0.
    Face,
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Worker threads for the top-level branches; 1 runs on the caller.
    pub jobs: usize,
    /// Stop after this many search nodes.
    pub node_budget: Option<u64>,
    pub seed: SeedMode,
    /// Merge solutions by canonical form.
    pub dedup: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            jobs: 1,
            node_budget: None,
            seed: SeedMode::Link,
            dedup: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub solutions: u64,
    pub classes: u64,
    pub elapsed_ms: u128,
    /// The node budget ran out before the search space was exhausted.
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Enumeration {
    pub face_sequence: FaceSequence,
    pub chi: i64,
    pub vertex_count: Option<usize>,
    /// One map per class (every solution when dedup is off), in order of
    /// discovery.
    pub maps: Vec<PolyhedralMap>,
    pub stats: SearchStats,
    pub note: Option<String>,
}

/// Distinct cyclic arrangements (up to rotation and reflection) of the
/// face sizes of `ty`, each rotated to start with a largest face.
pub fn arrangements(ty: &FaceSequence) -> Vec<Vec<usize>> {
    let mut items = ty.expanded();
    items.sort_unstable();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    loop {
        let key = min_necklace(&items);
        if seen.insert(key.clone()) {
            let max = *key.iter().max().unwrap();
            let k = key.len();
            let start = (0..k).find(|&i| key[i] == max).unwrap();
            out.push((0..k).map(|i| key[(start + i) % k]).collect());
        }
        if !next_permutation(&mut items) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The normalized link of vertex 0 for one arrangement: the link polygon
/// is labelled `1, 2, ...` starting from the corner just before the first
/// (largest) face, which gives `C_7([2, 3, 4], 5, 6, 7, 1)` for `(3^5, 4)`.
pub fn seed_link(arrangement: &[usize]) -> VertexLink {
    let d = arrangement.len();
    let order: Vec<usize> = std::iter::once(arrangement[d - 1])
        .chain(arrangement[..d - 1].iter().copied())
        .collect();
    let mut corners = Vec::with_capacity(d);
    let mut start = 1;
    let mut next = 2;
    for (i, &s) in order.iter().enumerate() {
        let mut path = vec![start];
        for _ in 0..s - 3 {
            path.push(next);
            next += 1;
        }
        let end = if i == d - 1 {
            1
        } else {
            next += 1;
            next - 1
        };
        path.push(end);
        start = end;
        corners.push(path);
    }
    VertexLink::from_corners(0, corners).expect("seed link is well formed")
}

struct Ctx<'a> {
    target: &'a FaceSequence,
    nodes: AtomicU64,
    budget: Option<u64>,
    stop: AtomicBool,
}

impl Ctx<'_> {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| n > b) {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn leaf(&self, pm: &PartialMap) -> Option<PolyhedralMap> {
        if (0..pm.n).any(|v| !pm.complete[v]) {
            return None;
        }
        let map = pm.to_map();
        if !validate(&map).is_valid() {
            return None;
        }
        (semi_equivelar_type(&map).ok()? == *self.target).then_some(map)
    }

    fn search(&self, pm: PartialMap, out: &mut Vec<PolyhedralMap>) {
        if !self.tick() {
            return;
        }
        let Some((v, w)) = pm.open_edge() else {
            out.extend(self.leaf(&pm));
            return;
        };
        for face in pm.candidates(v, w) {
            let mut child = pm.clone();
            if child.commit(&face).is_ok() {
                self.search(child, out);
            }
        }
    }

    /// Children of `pm` (one level), counting `pm` as a node.
    fn expand(&self, pm: &PartialMap, out: &mut Vec<PolyhedralMap>) -> Vec<PartialMap> {
        if !self.tick() {
            return Vec::new();
        }
        let Some((v, w)) = pm.open_edge() else {
            out.extend(self.leaf(pm));
            return Vec::new();
        };
        pm.candidates(v, w)
            .into_iter()
            .filter_map(|face| {
                let mut child = pm.clone();
                child.commit(&face).ok().map(|_| child)
            })
            .collect()
    }
}

/// Completes a partial map in every possible way.
pub fn enumerate_from(
    target: &FaceSequence,
    roots: Vec<PartialMap>,
    options: &EnumerateOptions,
) -> Result<(Vec<PolyhedralMap>, SearchStats)> {
    let started = Instant::now();
    let ctx = Ctx {
        target,
        nodes: AtomicU64::new(0),
        budget: options.node_budget,
        stop: AtomicBool::new(false),
    };
    let mut solutions = Vec::new();
    if options.jobs <= 1 {
        for root in roots {
            ctx.search(root, &mut solutions);
        }
    } else {
        // two levels of expansion give enough independent subtrees
        let mut frontier = Vec::new();
        for root in &roots {
            for child in ctx.expand(root, &mut solutions) {
                frontier.extend(ctx.expand(&child, &mut solutions));
            }
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?;
        let parts: Vec<Vec<PolyhedralMap>> = pool.install(|| {
            frontier
                .into_par_iter()
                .map(|pm| {
                    let mut out = Vec::new();
                    ctx.search(pm, &mut out);
                    out
                })
                .collect()
        });
        solutions.extend(parts.into_iter().flatten());
    }

    let solution_count = solutions.len() as u64;
    let maps = if options.dedup {
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        let mut keep = Vec::new();
        for m in solutions {
            if seen.insert(canonical_form(&m)?) {
                keep.push(m);
            }
        }
        keep
    } else {
        solutions
    };
    let stats = SearchStats {
        nodes: ctx.nodes.load(Ordering::Relaxed),
        solutions: solution_count,
        classes: if options.dedup { maps.len() as u64 } else { 0 },
        elapsed_ms: started.elapsed().as_millis(),
        truncated: ctx.stop.load(Ordering::Relaxed),
    };
    Ok((maps, stats))
}

/// All semi-equivelar maps of type `target` with Euler characteristic
/// `chi`, one per isomorphism class.
pub fn enumerate_sems(
    target: &FaceSequence,
    chi: i64,
    options: &EnumerateOptions,
) -> Result<Enumeration> {
    let mut result = Enumeration {
        face_sequence: target.clone(),
        chi,
        vertex_count: None,
        maps: Vec::new(),
        stats: SearchStats::default(),
        note: None,
    };
    let n = match sem_vertex_count(target, chi) {
        VertexCount::Exact(n) => n,
        VertexCount::Indeterminate => {
            result.note = Some(format!(
                "{target} is flat: chi=0 holds for every vertex count"
            ));
            return Ok(result);
        }
        VertexCount::Impossible => {
            result.note = Some(format!(
                "no integral vertex count for {target} with chi={chi}"
            ));
            return Ok(result);
        }
    };
    result.vertex_count = Some(n);

    let mut roots = Vec::new();
    match options.seed {
        SeedMode::Link => {
            for arr in arrangements(target) {
                let link = seed_link(&arr);
                if link.polygon_len() + 1 > n {
                    continue;
                }
                if let Ok(pm) = PartialMap::new(target, n).assume_link(&link) {
                    roots.push(pm);
                }
            }
        }
        SeedMode::Face => {
            let s = target.sizes().max().unwrap();
            if s <= n {
                let mut pm = PartialMap::new(target, n);
                if pm.commit(&(0..s).collect::<Vec<_>>()).is_ok() {
                    roots.push(pm);
                }
            }
        }
    }
    let (maps, stats) = enumerate_from(target, roots, options)?;
    result.maps = maps;
    result.stats = stats;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(s: &str) -> FaceSequence {
        s.parse().unwrap()
    }

    #[test]
    fn seed_matches_the_standard_link() {
        let arrs = arrangements(&fs("3^5,4"));
        assert_eq!(arrs, vec![vec![4, 3, 3, 3, 3, 3]]);
        let link = seed_link(&arrs[0]);
        assert_eq!(link.to_string(), "C_7([2, 3, 4], 5, 6, 7, 1)");
    }

    #[test]
    fn arrangements_of_two_quads() {
        // quads adjacent, or one or two triangles apart on the short side
        assert_eq!(arrangements(&fs("3^5,4^2")).len(), 3);
        assert_eq!(arrangements(&fs("3^2,4,3,4")).len(), 2);
    }

    #[test]
    fn commit_rejects_third_face_on_an_edge() {
        let mut pm = PartialMap::new(&fs("3^3"), 4);
        pm.commit(&[0, 1, 2]).unwrap();
        pm.commit(&[0, 1, 3]).unwrap();
        assert!(pm.commit(&[0, 1, 2]).is_err());
        let mut other = pm.clone();
        other.commit(&[0, 2, 3]).unwrap();
        assert!(other.is_complete(0));
        other.commit(&[1, 2, 3]).unwrap();
        assert!((0..4).all(|v| other.is_complete(v)));
    }

    #[test]
    fn early_closure_is_a_contradiction() {
        // a vertex of (3^4) closing after three triangles
        let mut pm = PartialMap::new(&fs("3^4"), 6);
        pm.commit(&[0, 1, 2]).unwrap();
        pm.commit(&[0, 2, 3]).unwrap();
        assert!(pm.commit(&[0, 3, 1]).is_err());
    }

    #[test]
    fn platonic_types() {
        let opts = EnumerateOptions::default();
        for (ty, chi, classes) in [
            ("3^3", 2, 1),
            ("3^4", 2, 1),
            ("4^3", 2, 1),
            ("3^5", 2, 1),
            ("3^5", 1, 1),
        ] {
            let e = enumerate_sems(&fs(ty), chi, &opts).unwrap();
            assert_eq!(e.maps.len(), classes, "{ty} on chi={chi}");
            assert!(!e.stats.truncated);
        }
    }

    #[test]
    fn flat_and_impossible_types_give_no_maps() {
        let opts = EnumerateOptions::default();
        let flat = enumerate_sems(&fs("3^6"), 0, &opts).unwrap();
        assert!(flat.maps.is_empty() && flat.note.is_some());
        let none = enumerate_sems(&fs("3^7,4"), -1, &opts).unwrap();
        assert!(none.maps.is_empty() && none.vertex_count.is_none());
    }

    #[test]
    fn budget_truncates() {
        let opts = EnumerateOptions {
            node_budget: Some(3),
            ..Default::default()
        };
        let e = enumerate_sems(&fs("3^5"), 2, &opts).unwrap();
        assert!(e.stats.truncated);
    }
}
