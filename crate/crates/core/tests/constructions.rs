use semmap_core::transforms::{glue_cylinder, CylinderSearchOptions};
use semmap_core::{
    add_cylinder, catalog_entry, cylinder_search, double_cover, face_sequence, semi_equivelar_type,
    stack_faces, surface_profile, validate, verify_covering, CoveringWitness, CylinderKind,
    CylinderSpec, Error, Face, FaceRef, FaceSequence, Gluing, PolyhedralMap,
};

fn get(name: &str) -> &'static PolyhedralMap {
    &catalog_entry(name).unwrap().map
}

fn chi(m: &PolyhedralMap) -> i64 {
    surface_profile(m).euler_characteristic
}

fn spec(kind: CylinderKind, a: &[usize], b: (usize, &[usize]), gluing: Gluing) -> CylinderSpec {
    CylinderSpec {
        kind,
        site_a: FaceRef {
            map: 0,
            face: a.to_vec(),
        },
        site_b: FaceRef {
            map: b.0,
            face: b.1.to_vec(),
        },
        gluing,
    }
}

#[test]
fn double_cover_properties() {
    for name in ["K1", "K2", "K3", "N", "rp2_6"] {
        let base = get(name);
        let (cover, witness) = double_cover(base).unwrap();
        assert!(validate(&cover).is_valid(), "{name}");
        let p = surface_profile(&cover);
        assert!(p.orientable, "{name}");
        assert_eq!(p.euler_characteristic, 2 * chi(base), "{name}");
        assert_eq!(witness.fold, 2);
        assert!(verify_covering(&cover, base, &witness), "{name}");
        for x in cover.vertices() {
            assert_eq!(
                face_sequence(&cover, x).unwrap(),
                face_sequence(base, witness.vertex_map[x]).unwrap()
            );
        }
    }
    assert!(matches!(
        double_cover(get("T1")),
        Err(Error::AlreadyOrientable)
    ));
}

#[test]
fn projective_plane_lifts_to_the_icosahedron() {
    let (cover, _) = double_cover(get("rp2_6")).unwrap();
    let p = surface_profile(&cover);
    assert_eq!(
        (p.vertex_count, p.face_count, p.euler_characteristic),
        (12, 20, 2)
    );
    assert!(cover.is_triangulation());
    assert!(cover.vertices().all(|v| cover.degree(v) == 5));
}

#[test]
fn covering_witnesses() {
    let k1 = get("K1");
    assert!(verify_covering(k1, k1, &CoveringWitness::identity(12)));

    // pairs {x, y} over base vertex i, with {8, 16} for the repeated {8, 18}
    let pairs = [
        (0, 12),
        (1, 18),
        (2, 20),
        (3, 21),
        (4, 19),
        (5, 13),
        (6, 23),
        (7, 17),
        (8, 16),
        (9, 15),
        (10, 14),
        (11, 22),
    ];
    let mut vertex_map = vec![0; 24];
    for (i, (x, y)) in pairs.into_iter().enumerate() {
        vertex_map[x] = i;
        vertex_map[y] = i;
    }
    let witness = CoveringWitness {
        vertex_map,
        fold: 2,
    };
    assert!(verify_covering(get("T1"), k1, &witness));
    // the list as printed sends 18 to both 1 and 8
    let mut printed = witness.clone();
    printed.vertex_map[16] = 0;
    printed.vertex_map[18] = 8;
    assert!(!verify_covering(get("T1"), k1, &printed));
    assert!(!verify_covering(get("T2"), get("K2"), &witness));

    // collapsing two vertices of the tetrahedron onto one breaks local bijectivity
    let tet = get("tetrahedron");
    let squash = CoveringWitness {
        vertex_map: vec![0, 0, 2, 3],
        fold: 1,
    };
    assert!(!verify_covering(tet, tet, &squash));
}

#[test]
fn stacking() {
    let tet = stack_faces(get("tetrahedron"));
    assert_eq!((tet.vertex_count(), chi(&tet)), (8, 2));
    for name in ["K1", "K2", "K3", "T1", "T2", "T3", "N"] {
        let base = get(name);
        let s = stack_faces(base);
        let p = surface_profile(base);
        let q = surface_profile(&s);
        let corners: usize = base.faces().iter().map(|f| f.len()).sum();
        assert!(validate(&s).is_valid());
        assert!(s.is_triangulation());
        assert_eq!(q.vertex_count, p.vertex_count + p.face_count);
        assert_eq!(q.edge_count, p.edge_count + corners);
        assert_eq!(q.face_count, corners);
        assert_eq!(q.euler_characteristic, p.euler_characteristic);
        assert!(semmap_core::is_d_covered(&s, 12).unwrap(), "{name}");
    }
    let s = stack_faces(get("K1"));
    assert!((0..12).all(|v| s.degree(v) == 12));
}

/// Every pair of vertex-disjoint faces of length `len`.
fn disjoint_pairs(m: &PolyhedralMap, len: usize) -> Vec<(Face, Face)> {
    let faces: Vec<&Face> = m.faces().iter().filter(|f| f.len() == len).collect();
    let mut out = Vec::new();
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if faces[i].vertices().iter().all(|&v| !faces[j].contains(v)) {
                out.push((faces[i].clone(), faces[j].clone()));
            }
        }
    }
    out
}

#[test]
fn every_cylinder_lowers_chi_by_two() {
    let mut valid = 0;
    for name in ["K1", "K2", "K3", "N"] {
        let m = get(name);
        for kind in [CylinderKind::Quad, CylinderKind::Tri] {
            let pairs = disjoint_pairs(m, kind.face_len());
            let step = if kind == CylinderKind::Tri { 7 } else { 1 };
            for (a, b) in pairs.iter().step_by(step) {
                for g in kind.gluings() {
                    let s = spec(kind, a.vertices(), (0, b.vertices()), g);
                    match add_cylinder(&[m], &s) {
                        Ok(out) => {
                            assert_eq!(chi(&out), chi(m) - 2);
                            valid += 1;
                        }
                        Err(Error::InvalidMap(report)) => assert!(!report.is_valid()),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
    assert!(valid > 0);
}

#[test]
fn partial_cylinder_is_not_semi_equivelar() {
    let k1 = get("K1");
    let (a, b) = (Face::new(vec![0, 2, 3, 4]), Face::new(vec![5, 6, 9, 8]));
    for g in CylinderKind::Quad.gluings() {
        // every vertex of one quad is next to the other, so the band always
        // doubles an edge and the addition is rolled back
        let raw = glue_cylinder(k1, CylinderKind::Quad, &a, &b, g).unwrap();
        assert!(semi_equivelar_type(&raw).is_err());
        let s = spec(CylinderKind::Quad, a.vertices(), (0, b.vertices()), g);
        assert!(matches!(add_cylinder(&[k1], &s), Err(Error::InvalidMap(_))));
    }

    // one band between K1 and K2 leaves the other quads untouched
    let k2 = get("K2");
    let q2 = k2.faces().iter().find(|f| f.len() == 4).unwrap();
    let joined = CylinderKind::Quad
        .gluings()
        .find_map(|g| {
            let s = spec(CylinderKind::Quad, a.vertices(), (1, q2.vertices()), g);
            add_cylinder(&[k1, k2], &s).ok()
        })
        .expect("some gluing is valid");
    assert_eq!(chi(&joined), -4);
    let err = semi_equivelar_type(&joined).unwrap_err();
    assert_ne!(err.first.1, err.second.1);
    assert_eq!(
        face_sequence(&joined, 0).unwrap(),
        "3^5,4^2".parse::<FaceSequence>().unwrap()
    );
    assert_eq!(
        face_sequence(&joined, 1).unwrap(),
        "3^5,4".parse::<FaceSequence>().unwrap()
    );
}

#[test]
fn single_base_k1_cannot_reach_chi_minus_4() {
    let bases = vec![("K1".to_string(), get("K1").clone())];
    let found = cylinder_search(
        &bases,
        &"3^5,4^2".parse().unwrap(),
        -4,
        &CylinderSearchOptions::default(),
    )
    .unwrap();
    assert_eq!(found.class_count, 0);
    assert!(found.classes.is_empty());
}

#[test]
fn two_copies_of_k1_with_triangle_bands() {
    let bases = vec![("K1".to_string(), get("K1").clone())];
    let options = CylinderSearchOptions {
        limit: Some(3),
        ..Default::default()
    };
    let target: FaceSequence = "3^7,4".parse().unwrap();
    let found = cylinder_search(&bases, &target, -10, &options).unwrap();
    assert_eq!(found.classes.len(), 3);
    for f in &found.classes {
        assert_eq!(f.bases, vec!["K1", "K1"]);
        assert_eq!(f.specs.len(), 4);
        assert!(f.specs.iter().all(|s| s.kind == CylinderKind::Tri));
        assert_eq!(semi_equivelar_type(&f.map).unwrap(), target);
        assert_eq!(chi(&f.map), -10);
    }
}

#[test]
fn quad_bundles_between_two_bases() {
    let k1 = get("K1");
    let k2 = get("K2");
    let bases = vec![
        ("K1".to_string(), k1.clone()),
        ("K2".to_string(), k2.clone()),
    ];
    let target: FaceSequence = "3^5,4^2".parse().unwrap();
    let found = cylinder_search(&bases, &target, -8, &CylinderSearchOptions::default()).unwrap();
    assert!(found.class_count >= 10);
    let mixed = found
        .classes
        .iter()
        .find(|f| f.bases == ["K1", "K2"])
        .expect("a K1-K2 join");
    assert!(mixed.specs.iter().any(|s| s.site_a.map != s.site_b.map));
}

#[test]
fn cylinder_errors() {
    let k1 = get("K1");
    let touching = spec(
        CylinderKind::Quad,
        &[0, 2, 3, 4],
        (0, &[0, 2, 3, 4]),
        Gluing::default(),
    );
    assert!(matches!(
        add_cylinder(&[k1], &touching),
        Err(Error::BadCylinder(_))
    ));
    let missing = spec(
        CylinderKind::Quad,
        &[0, 2, 3, 4],
        (0, &[5, 6, 8, 9]),
        Gluing::default(),
    );
    assert!(matches!(
        add_cylinder(&[k1], &missing),
        Err(Error::NoSuchFace(_))
    ));
    let wrong_kind = spec(
        CylinderKind::Tri,
        &[0, 2, 3, 4],
        (1, &[5, 6, 9, 8]),
        Gluing::default(),
    );
    assert!(matches!(
        add_cylinder(&[k1, k1], &wrong_kind),
        Err(Error::BadCylinder(_))
    ));
    let too_far = spec(
        CylinderKind::Quad,
        &[0, 2, 3, 4],
        (1, &[5, 6, 9, 8]),
        Gluing {
            offset: 4,
            reflect: false,
        },
    );
    assert!(matches!(
        add_cylinder(&[k1, k1], &too_far),
        Err(Error::BadCylinder(_))
    ));
}
