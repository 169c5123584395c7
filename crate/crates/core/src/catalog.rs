//! Built-in maps: the three `(3^5, 4)` maps on twelve vertices, their
//! orientable double covers, a non-orientable `(3^5, 4)` map on 24 vertices,
//! and a few small reference maps.
//!
//! Every entry is parsed and checked against its expected profile the
//! first time the catalog is touched.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::face_sequence::FaceSequence;
use crate::io::parse_map;
use crate::map::PolyhedralMap;
use crate::surface::{semi_equivelar_type, surface_profile};
use crate::validate::validate;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedProfile {
    pub chi: i64,
    pub orientable: bool,
    pub face_sequence: FaceSequence,
    pub vertex_transitive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub map: PolyhedralMap,
    pub note: &'static str,
    pub expected: ExpectedProfile,
}

struct Raw {
    name: &'static str,
    text: &'static str,
    note: &'static str,
    chi: i64,
    orientable: bool,
    face_sequence: &'static str,
    vertex_transitive: bool,
}

const T1_NOTE: &str = "orientable double cover of K1 on the double torus; the original \
     covering map lists 18 twice and omits 16, and with {8, 16} in place of {8, 18} it is a \
     covering onto K1";
const T2_NOTE: &str = "orientable double cover of K2 on the double torus; the original \
     covering map (written for T1) is not a covering onto K2 under these labels";
const T3_NOTE: &str = "orientable double cover of K3 on the double torus; the original face \
     [10, 11, 17] leaves four edges open and is read as [10, 23, 17]";

const RAW: &[Raw] = &[
    Raw {
        name: "K1",
        text: include_str!("../data/K1.map"),
        note: "(3^5, 4) on the non-orientable surface of Euler characteristic -1",
        chi: -1,
        orientable: false,
        face_sequence: "3^5,4",
        vertex_transitive: false,
    },
    Raw {
        name: "K2",
        text: include_str!("../data/K2.map"),
        note: "(3^5, 4) on the non-orientable surface of Euler characteristic -1",
        chi: -1,
        orientable: false,
        face_sequence: "3^5,4",
        vertex_transitive: false,
    },
    Raw {
        name: "K3",
        text: include_str!("../data/K3.map"),
        note: "(3^5, 4) on the non-orientable surface of Euler characteristic -1",
        chi: -1,
        orientable: false,
        face_sequence: "3^5,4",
        vertex_transitive: false,
    },
    Raw {
        name: "T1",
        text: include_str!("../data/T1.map"),
        note: T1_NOTE,
        chi: -2,
        orientable: true,
        face_sequence: "3^5,4",
        vertex_transitive: false,
    },
    Raw {
        name: "T2",
        text: include_str!("../data/T2.map"),
        note: T2_NOTE,
        chi: -2,
        orientable: true,
        face_sequence: "3^5,4",
        vertex_transitive: false,
    },
    Raw {
        name: "T3",
        text: include_str!("../data/T3.map"),
        note: T3_NOTE,
        chi: -2,
        orientable: true,
        face_sequence: "3^5,4",
        vertex_transitive: false,
    },
    Raw {
        name: "N",
        text: include_str!("../data/N.map"),
        note: "(3^5, 4) on the non-orientable surface of Euler characteristic -2; \
               the original face list repeats [1, 8, 5] as [5, 1, 8], the repeat is dropped",
        chi: -2,
        orientable: false,
        face_sequence: "3^5,4",
        vertex_transitive: false,
    },
    Raw {
        name: "tetrahedron",
        text: include_str!("../data/tetrahedron.map"),
        note: "boundary of the tetrahedron",
        chi: 2,
        orientable: true,
        face_sequence: "3^3",
        vertex_transitive: true,
    },
    Raw {
        name: "cube",
        text: include_str!("../data/cube.map"),
        note: "boundary of the cube",
        chi: 2,
        orientable: true,
        face_sequence: "4^3",
        vertex_transitive: true,
    },
    Raw {
        name: "rp2_6",
        text: include_str!("../data/rp2_6.map"),
        note: "six-vertex triangulation of the projective plane",
        chi: 1,
        orientable: false,
        face_sequence: "3^5",
        vertex_transitive: true,
    },
];

fn load(raw: &Raw) -> Result<CatalogEntry> {
    let mismatch = |message: String| Error::CatalogMismatch {
        name: raw.name.to_string(),
        message,
    };
    let doc = parse_map(raw.text)?;
    if doc.name != raw.name {
        return Err(mismatch(format!("file declares name {}", doc.name)));
    }
    let report = validate(&doc.map);
    if !report.is_valid() {
        return Err(mismatch(report.to_string()));
    }
    let expected = ExpectedProfile {
        chi: raw.chi,
        orientable: raw.orientable,
        face_sequence: raw.face_sequence.parse()?,
        vertex_transitive: raw.vertex_transitive,
    };
    let profile = surface_profile(&doc.map);
    if profile.euler_characteristic != expected.chi || profile.orientable != expected.orientable {
        return Err(mismatch(format!("profile is {profile}")));
    }
    let ty = semi_equivelar_type(&doc.map).map_err(|e| mismatch(e.to_string()))?;
    if ty != expected.face_sequence {
        return Err(mismatch(format!("type is {ty}")));
    }
    Ok(CatalogEntry {
        name: raw.name,
        map: doc.map,
        note: raw.note,
        expected,
    })
}

/// All built-in entries, in a fixed order.
///
/// Panics if the embedded data fails its own profile check, which the test
/// suite rules out.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        RAW.iter()
            .map(|raw| load(raw).unwrap_or_else(|e| panic!("{e}")))
            .collect()
    })
}

/// Looks an entry up by name, ignoring ASCII case.
pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry> {
    catalog()
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        assert_eq!(catalog().len(), RAW.len());
        for e in catalog() {
            assert_eq!(
                semi_equivelar_type(&e.map).unwrap(),
                e.expected.face_sequence,
                "{}",
                e.name
            );
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(catalog_entry("k1").unwrap().map.vertex_count(), 12);
        assert_eq!(catalog_entry("T2").unwrap().map.vertex_count(), 24);
        assert!(matches!(
            catalog_entry("K4"),
            Err(Error::UnknownCatalogEntry(_))
        ));
    }

    #[test]
    fn mismatches_are_reported() {
        let raw = Raw {
            name: "K1",
            text: include_str!("../data/K1.map"),
            note: "",
            chi: -2,
            orientable: false,
            face_sequence: "3^5,4",
            vertex_transitive: false,
        };
        assert!(matches!(load(&raw), Err(Error::CatalogMismatch { .. })));
    }
}
