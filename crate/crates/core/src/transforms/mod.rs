//! Constructions producing new maps: orientation double cover, cylinder
//! addition and face stacking.

mod cover;
mod cylinder;
mod stack;

pub use cover::{double_cover, verify_covering, CoveringWitness};
pub use cylinder::{
    add_cylinder, add_cylinders, cylinder_search, face_packings, glue_cylinder, CylinderKind,
    CylinderSearch, CylinderSearchOptions, CylinderSpec, FaceRef, FoundMap, Gluing,
};
pub use stack::stack_faces;
