use contour_core::matroid::is_basis_family;
use contour_core::presets::{matroid_decompositions, split_2_4, split_3_5};
use contour_core::stanley::{
    cone_points, graded_dim, hilbert_check, stanley_product, white_check_family, white_failures,
    GluingData, GluingJson,
};
use contour_core::subdivision::Subdivision;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn graded_dim_ignores_cell_order(seed in any::<u64>(), d in 1i64..=3) {
        let s = split_3_5().unwrap();
        let mut cells = s.cells().to_vec();
        cells.reverse();
        let flipped = Subdivision::new(s.base().clone(), cells).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = GluingData::random_coboundary(&s, &mut rng).unwrap();
        for a in cone_points(3, 5, d) {
            prop_assert_eq!(graded_dim(&s, &t, &a).unwrap(), graded_dim(&flipped, &t, &a).unwrap());
        }
    }

    #[test]
    fn random_gluing_gives_hilbert_function(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = split_2_4().unwrap();
        let t = GluingData::random_coboundary(&s, &mut rng).unwrap();
        let rep = hilbert_check(&s, &t, 3, 20, &mut rng).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep.failures);
    }
}

#[test]
fn products_respect_cells_and_levels() {
    let s = split_2_4().unwrap();
    let complex = s.complex().unwrap();
    let points: Vec<_> = (1..=2).flat_map(|d| cone_points(2, 4, d)).collect();
    for a in &points {
        for b in &points {
            let in_a = complex.faces_containing(&a.a, a.level);
            let in_b = complex.faces_containing(&b.a, b.level);
            let common = complex
                .poset()
                .cells()
                .iter()
                .any(|c| in_a.contains(c) && in_b.contains(c));
            match stanley_product(a, b, &s).unwrap() {
                Some(c) => {
                    assert!(common);
                    assert_eq!(c.level, a.level + b.level);
                    let t = GluingData::identity(4);
                    assert_eq!(graded_dim(&s, &t, &c).unwrap(), 1);
                }
                None => assert!(!common),
            }
        }
    }
}

#[test]
fn white_on_every_cell() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, s) in matroid_decompositions(&mut rng).unwrap() {
        let (r, n) = s.params().unwrap();
        for family in s.cell_subsets().unwrap() {
            for d in 1..=3 {
                assert!(
                    white_check_family(n, r, &family, d).unwrap(),
                    "{name} {family:?}"
                );
            }
        }
    }
}

#[test]
fn white_fails_on_non_matroid_simplex() {
    let family = vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 4, 5], vec![2, 3, 5]];
    assert!(!is_basis_family(6, 3, &family));
    assert_eq!(
        white_failures(6, 3, &family, 2).unwrap(),
        vec![vec![1, 1, 1, 1, 1, 1]]
    );
}

#[test]
fn gluing_json_round_trip() {
    let s = split_3_5().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let t = GluingData::random_coboundary(&s, &mut rng).unwrap();
    let text = serde_json::to_string(&t.to_json(&s).unwrap()).unwrap();
    let json: GluingJson = serde_json::from_str(&text).unwrap();
    let back = GluingData::from_json(&json, &s).unwrap();
    for a in cone_points(3, 5, 2) {
        assert_eq!(
            graded_dim(&s, &back, &a).unwrap(),
            graded_dim(&s, &t, &a).unwrap()
        );
    }
}
