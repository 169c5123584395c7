//! Semi-equivelar maps on closed surfaces.
//!
//! A [`PolyhedralMap`] is a finite set of polygonal faces, each a cycle of
//! vertex labels, that glue up into a closed surface. This crate validates
//! the polyhedral-map axioms, computes the usual combinatorial invariants
//! (Euler characteristic, orientability, vertex links, face sequences,
//! `G_t` graphs), decides isomorphism through a flag-rooted canonical form,
//! builds new maps from old ones (orientation double cover, cylinder
//! addition, face stacking) and exhaustively enumerates semi-equivelar maps
//! of a given type and Euler characteristic.

pub mod canon;
pub mod catalog;
pub mod enumerate;
mod error;
pub mod face_sequence;
pub mod graph;
pub mod io;
pub mod link;
pub mod map;
pub mod surface;
pub mod transforms;
pub mod validate;

pub use canon::{
    are_isomorphic, automorphism_group, canonical_form, canonical_labeling, is_vertex_transitive,
    AutomorphismGroup, CanonicalForm, Permutation,
};
pub use catalog::{catalog, catalog_entry, CatalogEntry, ExpectedProfile};
pub use enumerate::{enumerate_sems, EnumerateOptions, Enumeration, PartialMap, SearchStats};
pub use error::{Error, Result};
pub use face_sequence::{sem_vertex_count, FaceSequence, VertexCount};
pub use graph::{
    cofacial_sets, common_neighbor_counts, g_t_graph, g_t_graph_with, neighbor_set, neighbor_sets,
    Adjacency, SimpleGraph,
};
pub use io::{
    parse_map, parse_map_with, serialize_json, serialize_text, MapDocument, ParseOptions,
};
pub use link::{vertex_link, VertexLink};
pub use map::{Face, PolyhedralMap, Vertex};
pub use surface::{
    face_sequence, is_d_covered, orientation, semi_equivelar_type, surface_profile, SurfaceProfile,
};
pub use transforms::{
    add_cylinder, cylinder_search, double_cover, stack_faces, verify_covering, CoveringWitness,
    CylinderKind, CylinderSpec, FaceRef, Gluing,
};
pub use validate::{validate, ValidationReport, Violation};
