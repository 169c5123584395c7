use crate::map::{Face, Vertex};
use crate::validate::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a map on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("map is not valid: {0}")]
    InvalidMap(ValidationReport),

    #[error("map is not a triangulation (face {0} has {len} vertices)", len = .0.len())]
    NotTriangulation(Face),

    #[error("map is orientable; its orientation cover is two disjoint copies")]
    AlreadyOrientable,

    #[error("face {0} is not a face of the map")]
    NoSuchFace(Face),

    #[error("cylinder spec: {0}")]
    BadCylinder(String),

    #[error("bad face sequence {text:?}: {reason}")]
    BadFaceSequence { text: String, reason: String },

    #[error("bad link notation {text:?}: {reason}")]
    BadLink { text: String, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate face {face}")]
    DuplicateFace { line: usize, face: Face },

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),

    #[error("catalog entry {name}: {message}")]
    CatalogMismatch { name: String, message: String },

    #[error("worker pool: {0}")]
    ThreadPool(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
