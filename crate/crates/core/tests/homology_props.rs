use contour_core::exact::subsets::binomial;
use contour_core::homology::{
    cohomology_ob, cohomology_report, graded_exactness_check, homology_dims, relative_complex,
    skeleton_pair_oracle, GradedExactness,
};
use contour_core::polytope::{face_poset, LatticePolytope};
use contour_core::presets::matroid_decompositions;
use contour_core::stanley::{cone_points, GluingData};
use contour_core::subdivision::Subdivision;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euler_characteristic_matches_homology(
        pts in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 4..9),
        mask in any::<u64>(),
    ) {
        let mut pts = pts;
        pts.sort();
        pts.dedup();
        let Ok(p) = LatticePolytope::new(3, pts) else { return Ok(()) };
        let poset = face_poset(&p).unwrap();
        // L: vertices picked by the mask, closed downward trivially
        let l: Vec<bool> = poset
            .faces()
            .iter()
            .enumerate()
            .map(|(i, f)| f.dim == 0 && mask >> (i % 64) & 1 == 1)
            .collect();
        let c = relative_complex(&poset, &l).unwrap();
        let h = homology_dims(&c);
        let chi: i64 = h.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(chi, c.euler_characteristic());
    }
}

#[test]
fn cohomology_on_decompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, s) in matroid_decompositions(&mut rng).unwrap() {
        let rep = cohomology_report(&s).unwrap();
        assert!(rep.passed, "{name}: {rep:?}");
    }
}

#[test]
fn ob_has_binomial_in_top_degree() {
    for (r, n) in [(3, 5), (3, 6), (4, 6)] {
        let h = cohomology_ob(&Subdivision::trivial_hypersimplex(r, n).unwrap()).unwrap();
        let mut want = vec![0; r - 1];
        want[0] = 1;
        want[r - 2] = binomial(n - 1, r - 1);
        assert_eq!(h, want, "({r},{n})");
    }
}

#[test]
fn oracle_agrees_with_pipeline() {
    for (r, n) in [(2, 4), (2, 5), (3, 5), (3, 6), (4, 6)] {
        let rep = skeleton_pair_oracle(r, n).unwrap();
        let h = cohomology_ob(&Subdivision::trivial_hypersimplex(r, n).unwrap()).unwrap();
        assert_eq!(rep.shifted_at(n - r), h[r - 2]);
        assert_eq!(rep.wedge_cokernel, binomial(n - 1, r - 1));
    }
}

#[test]
fn exactness_on_decompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (name, s) in matroid_decompositions(&mut rng).unwrap() {
        let (r, n) = s.params().unwrap();
        let t = GluingData::random_coboundary(&s, &mut rng).unwrap();
        for a in cone_points(r, n, 1) {
            let out = graded_exactness_check(&s, &t, &a).unwrap();
            assert!(
                matches!(out, GradedExactness::Checked { exact: true, .. }),
                "{name} {out:?}"
            );
        }
    }
}
