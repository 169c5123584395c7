mod common;

use proptest::prelude::*;
use semmap_core::{
    are_isomorphic, automorphism_group, canonical_form, canonical_labeling, catalog, g_t_graph,
    is_vertex_transitive, surface_profile, vertex_link, PolyhedralMap, Vertex,
};

fn entry_and_perm() -> impl Strategy<Value = (usize, Vec<Vertex>)> {
    (0..catalog().len()).prop_flat_map(|i| {
        let n = catalog()[i].map.vertex_count();
        (Just(i), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn two_perms() -> impl Strategy<Value = (usize, Vec<Vertex>, Vec<Vertex>)> {
    (0..catalog().len()).prop_flat_map(|i| {
        let n = catalog()[i].map.vertex_count();
        let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        (Just(i), perm.clone(), perm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_ignores_labels((i, perm) in entry_and_perm()) {
        let m = &catalog()[i].map;
        let renamed = m.relabel(&perm);
        prop_assert_eq!(canonical_form(&renamed).unwrap(), canonical_form(m).unwrap());
        let lab = canonical_labeling(&renamed).unwrap();
        prop_assert_eq!(renamed.relabel(&lab.labeling), lab.form.to_map());
    }

    #[test]
    fn invariants_ignore_labels((i, perm) in entry_and_perm()) {
        let m = &catalog()[i].map;
        let renamed = m.relabel(&perm);
        prop_assert_eq!(surface_profile(&renamed), surface_profile(m));
        let shape = |x: &PolyhedralMap| {
            (0..=x.vertex_count()).map(|t| g_t_graph(x, t).component_shape()).collect::<Vec<_>>()
        };
        prop_assert_eq!(shape(&renamed), shape(m));
        prop_assert_eq!(
            automorphism_group(&renamed).unwrap().order,
            automorphism_group(m).unwrap().order
        );
        prop_assert_eq!(is_vertex_transitive(&renamed).unwrap(), catalog()[i].expected.vertex_transitive);
        for v in m.vertices() {
            prop_assert_eq!(
                vertex_link(&renamed, perm[v]).unwrap().arrangement().len(),
                vertex_link(m, v).unwrap().arrangement().len()
            );
        }
    }

    #[test]
    fn isomorphism_is_an_equivalence((i, p, q) in two_perms()) {
        let m = &catalog()[i].map;
        let a = m.relabel(&p);
        let b = m.relabel(&q);
        let ab = are_isomorphic(&a, &b).unwrap().expect("relabelings are isomorphic");
        prop_assert_eq!(a.relabel(&ab), b.clone());
        let ba = are_isomorphic(&b, &a).unwrap().unwrap();
        prop_assert_eq!(b.relabel(&ba), a.clone());
        prop_assert!(are_isomorphic(&a, &a).unwrap().is_some());
        for other in catalog() {
            if other.name != catalog()[i].name {
                prop_assert!(are_isomorphic(&a, &other.map).unwrap().is_none());
            }
        }
    }
}

#[test]
fn automorphism_orders_match_brute_force() {
    for (name, m) in common::small_maps() {
        let brute = common::brute_force_isomorphisms(&m, &m).len();
        let group = automorphism_group(&m).unwrap();
        assert_eq!(group.order, brute, "{name}");
        assert_eq!(group.elements().len(), brute, "{name}");
        for g in group.elements() {
            assert_eq!(m.relabel(g), m, "{name}");
        }
    }
}

#[test]
fn small_maps_are_valid_and_distinct() {
    let maps = common::small_maps();
    for (name, m) in &maps {
        assert!(semmap_core::validate(m).is_valid(), "{name}");
    }
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            assert!(
                are_isomorphic(&maps[i].1, &maps[j].1).unwrap().is_none(),
                "{} vs {}",
                maps[i].0,
                maps[j].0
            );
        }
    }
}
