use contour_core::exact::subsets::{binomial, k_subsets, subset_key};
use contour_core::polytope::hypersimplex;
use contour_core::presets::{matroid_decompositions, non_matroidal_3_5, random_heights};
use contour_core::subdivision::{
    cell_containing_gamma, gamma_face, is_matroid_decomposition, regular_subdivision, strata_poset,
    validate, Subdivision, SubdivisionJson,
};
use contour_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn regular_subdivisions_validate(seed in any::<u64>(), which in 0usize..3) {
        let (r, n) = [(2, 4), (2, 5), (3, 5)][which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = hypersimplex(r, n).unwrap();
        let h = random_heights(binomial(n, r), &mut rng);
        let s = regular_subdivision(&base, &h).unwrap();
        let report = validate(&s);
        prop_assert!(report.passed(), "{:?}", report.failures);
    }
}

#[test]
fn gamma_unique_on_matroid_decompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, s) in matroid_decompositions(&mut rng).unwrap() {
        assert!(is_matroid_decomposition(&s).unwrap(), "{name}");
        let (r, n) = s.params().unwrap();
        for i_set in k_subsets(n, r - 1) {
            let rep = cell_containing_gamma(&s, &i_set).unwrap();
            assert!(rep.simplicial && rep.unimodular, "{name} {i_set:?}");
            assert_eq!(rep.rays.len(), r - 1);
        }
    }
}

#[test]
fn non_matroidal_triangulation_is_caught() {
    let s = non_matroidal_3_5().unwrap();
    assert!(!is_matroid_decomposition(&s).unwrap());
    assert!(validate(&s).passed());
    assert!(matches!(
        cell_containing_gamma(&s, &[0, 1]),
        Err(Error::NotUnique { .. })
    ));
}

#[test]
fn trivial_strata_points_are_gamma_faces() {
    for (r, n) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
        let poset = strata_poset(&Subdivision::trivial_hypersimplex(r, n).unwrap()).unwrap();
        let mut points: Vec<Vec<String>> = poset
            .elements
            .iter()
            .filter(|e| e.stratum_dim == 0)
            .map(|e| e.vertices.clone())
            .collect();
        points.sort();
        let mut gammas: Vec<Vec<String>> = k_subsets(n, r - 1)
            .iter()
            .map(|i| {
                let face = gamma_face(r, n, i).unwrap();
                let base = hypersimplex(r, n).unwrap();
                face.vertices
                    .iter()
                    .map(|&v| {
                        let x = &base.vertices()[v];
                        let s: Vec<usize> = (0..n).filter(|&k| x[k] == 1).collect();
                        subset_key(&s)
                    })
                    .collect()
            })
            .collect();
        gammas.sort();
        assert_eq!(points.len(), binomial(n, r - 1));
        assert_eq!(points, gammas);
    }
}

#[test]
fn top_stratum_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, s) in matroid_decompositions(&mut rng).unwrap() {
        let (r, _) = s.params().unwrap();
        let poset = strata_poset(&s).unwrap();
        let top = poset.elements.iter().map(|e| e.stratum_dim).max().unwrap();
        assert_eq!(top, r - 1, "{name}");
    }
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (_, s) in matroid_decompositions(&mut rng).unwrap() {
        let json = serde_json::to_string(&SubdivisionJson::from_subdivision(&s).unwrap()).unwrap();
        let back: SubdivisionJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_subdivision().unwrap().cells(), s.cells());
    }
}
