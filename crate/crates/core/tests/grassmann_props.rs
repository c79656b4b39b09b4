use contour_core::exact::pluecker_relations_ok;
use contour_core::grassmann::{
    contains_e, gauss_point, gauss_point_by_kernel, gm_point, gm_translate, is_general_position,
    torus_act, Arrangement,
};
use contour_core::presets::{nine_lines, random_generic_arrangement, random_point_off};
use contour_core::Rational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arrangement(r: usize, n: usize) -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, r), n)
        .prop_filter_map("forms must span", |rows| {
            Arrangement::from_int_forms(&rows).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn general_position_iff_minors_nonzero(a in arrangement(3, 5)) {
        let p = gm_point(&a).unwrap();
        let all_nonzero = p.coords().iter().all(|c| !c.is_zero());
        prop_assert_eq!(all_nonzero, is_general_position(&a));
    }

    #[test]
    fn translates_contain_e(seed in any::<u64>(), r in 2usize..=4, extra in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_generic_arrangement(r, r + extra, &mut rng);
        for _ in 0..5 {
            let u = random_point_off(&a, &mut rng);
            prop_assert!(contains_e(&gm_translate(&a, &u).unwrap()));
        }
    }

    #[test]
    fn gauss_routes_agree(seed in any::<u64>(), r in 2usize..=3, extra in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_generic_arrangement(r, r + extra, &mut rng);
        let u = random_point_off(&a, &mut rng);
        let q = gauss_point(&a, &u).unwrap();
        let k = gauss_point_by_kernel(&a, &u).unwrap();
        prop_assert!(q.projectively_eq(&k));
    }

    #[test]
    fn torus_preserves_relations(
        seed in any::<u64>(),
        t in prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], 5),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_generic_arrangement(2, 5, &mut rng);
        let p = gm_point(&a).unwrap();
        let t: Vec<Rational> = t.into_iter().map(Rational::from).collect();
        prop_assert!(pluecker_relations_ok(&torus_act(&t, &p).unwrap()));
    }
}

#[test]
fn nine_lines_is_not_generic() {
    assert!(!is_general_position(&nine_lines()));
}
