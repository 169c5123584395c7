use semmap_core::{
    are_isomorphic, catalog, catalog_entry, double_cover, parse_map, parse_map_with,
    serialize_json, serialize_text, surface_profile, validate, Error, Face, ParseOptions,
    Violation,
};

const N_RAW: &str = include_str!("data/N_raw.map");
const T3_RAW: &str = include_str!("data/T3_raw.map");

#[test]
fn raw_n_has_one_repeated_triangle() {
    match parse_map(N_RAW) {
        Err(Error::DuplicateFace { face, .. }) => assert_eq!(face, Face::new(vec![1, 5, 8])),
        other => panic!("expected a duplicate face, got {other:?}"),
    }

    // literal scan for cyclic repeats, independent of the parser's normal form
    let faces: Vec<Vec<usize>> = N_RAW
        .lines()
        .filter_map(|l| l.strip_prefix("f "))
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(faces.len(), 47);
    let same_cycle = |a: &[usize], b: &[usize]| {
        let k = a.len();
        k == b.len()
            && (0..k).any(|r| {
                (0..k).all(|i| a[i] == b[(r + i) % k]) || (0..k).all(|i| a[i] == b[(r + k - i) % k])
            })
    };
    let mut repeats = Vec::new();
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if same_cycle(&faces[i], &faces[j]) {
                repeats.push((faces[i].clone(), faces[j].clone()));
            }
        }
    }
    assert_eq!(repeats, vec![(vec![1, 8, 5], vec![5, 1, 8])]);

    let doc = parse_map_with(N_RAW, ParseOptions { dedupe: true }).unwrap();
    assert_eq!(doc.map.face_count(), 46);
    assert!(validate(&doc.map).is_valid());
    let p = surface_profile(&doc.map);
    assert_eq!((p.euler_characteristic, p.orientable), (-2, false));
    assert_eq!(doc.map, catalog_entry("N").unwrap().map);
}

#[test]
fn raw_t3_leaves_four_edges_open() {
    let doc = parse_map(T3_RAW).unwrap();
    let report = validate(&doc.map);
    let mut open: Vec<(usize, usize)> = report
        .violations
        .iter()
        .filter_map(|v| match v {
            Violation::EdgeMultiplicity { edge, faces: 1 } => Some(*edge),
            _ => None,
        })
        .collect();
    open.sort();
    assert_eq!(open, vec![(10, 11), (10, 23), (11, 17), (17, 23)]);

    let fixed = &catalog_entry("T3").unwrap().map;
    let differ: Vec<&Face> = doc
        .map
        .faces()
        .iter()
        .filter(|f| !fixed.contains_face(f))
        .collect();
    assert_eq!(differ, vec![&Face::new(vec![10, 11, 17])]);
    let (cover, _) = double_cover(&catalog_entry("K3").unwrap().map).unwrap();
    assert!(are_isomorphic(&cover, fixed).unwrap().is_some());
}

#[test]
fn k1_with_letter_aliases() {
    let lettered: String = include_str!("../data/K1.map")
        .lines()
        .map(|l| {
            let tokens: Vec<&str> = l
                .split_whitespace()
                .map(|t| match t {
                    "10" => "u",
                    "11" => "v",
                    t => t,
                })
                .collect();
            tokens.join(" ") + "\n"
        })
        .collect();
    assert!(lettered.contains(" u"));
    let doc = parse_map(&lettered).unwrap();
    assert_eq!((doc.map.vertex_count(), doc.map.face_count()), (12, 23));
    assert_eq!(doc.map, catalog_entry("K1").unwrap().map);
}

#[test]
fn catalog_round_trips() {
    for e in catalog() {
        let doc = semmap_core::MapDocument {
            name: e.name.to_string(),
            map: e.map.clone(),
        };
        let text = serialize_text(&doc);
        assert_eq!(parse_map(&text).unwrap(), doc);
        assert_eq!(serialize_text(&parse_map(&text).unwrap()), text);
        assert_eq!(parse_map(&serialize_json(&doc)).unwrap(), doc);
    }
}
