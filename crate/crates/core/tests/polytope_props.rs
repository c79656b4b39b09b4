use contour_core::polytope::{face_poset, hypersimplex, LatticePolytope};
use proptest::prelude::*;

fn points(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), dim + 1..dim + 6)
}

fn hull(ambient: usize, pts: Vec<Vec<i64>>) -> Option<LatticePolytope> {
    let mut pts = pts;
    pts.sort();
    pts.dedup();
    LatticePolytope::new(ambient, pts).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn boundary_squares_to_zero_on_random_polytopes(pts in points(3)) {
        if let Some(p) = hull(3, pts) {
            let poset = face_poset(&p).unwrap();
            prop_assert!(poset.boundary_squares_to_zero());
        }
    }

    #[test]
    fn boundary_euler_characteristic_is_sphere(pts in points(3)) {
        if let Some(p) = hull(3, pts) {
            let d = p.dim();
            if d >= 1 {
                let chi = face_poset(&p).unwrap().boundary_euler_characteristic();
                let sphere = if (d - 1) % 2 == 0 { 2 } else { 0 };
                prop_assert_eq!(chi, sphere);
            }
        }
    }
}

#[test]
fn hypersimplex_facet_counts() {
    for n in 3..=7 {
        for r in 1..n {
            let facets = hypersimplex(r, n).unwrap().facets().unwrap().len();
            let expected = if r == 1 || r == n - 1 { n } else { 2 * n };
            assert_eq!(facets, expected, "Δ({r},{n})");
        }
    }
}

#[test]
fn hypersimplex_posets_are_chain_complexes() {
    for (r, n) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
        let poset = face_poset(&hypersimplex(r, n).unwrap()).unwrap();
        assert!(poset.boundary_squares_to_zero());
        let sphere = if (n - 2) % 2 == 0 { 2 } else { 0 };
        assert_eq!(poset.boundary_euler_characteristic(), sphere);
    }
}
