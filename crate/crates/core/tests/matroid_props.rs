use contour_core::exact::subsets::k_subsets;
use contour_core::matroid::{edges_are_roots, is_basis_family, is_connected, polytope_of, Matroid};
use contour_core::polytope::{hypersimplex, indicator};

fn families(n: usize, r: usize) -> Vec<Vec<Vec<usize>>> {
    let all = k_subsets(n, r);
    (1u32..(1 << all.len()))
        .map(|mask| {
            all.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect()
        })
        .collect()
}

#[test]
fn exchange_and_edge_tests_agree() {
    for n in [4, 5] {
        for family in families(n, 2) {
            assert_eq!(
                is_basis_family(n, 2, &family),
                edges_are_roots(n, &family),
                "family {family:?}"
            );
        }
    }
}

#[test]
fn uniform_matroid_polytope_is_hypersimplex() {
    for (r, n) in [(1, 3), (2, 4), (2, 5), (3, 5), (3, 6)] {
        let p = polytope_of(&Matroid::uniform(r, n).unwrap());
        assert_eq!(p, hypersimplex(r, n).unwrap());
    }
}

#[test]
fn connected_iff_full_dimensional() {
    for n in 2..=5 {
        for r in 1..n {
            for family in families(n, r)
                .into_iter()
                .filter(|f| is_basis_family(n, r, f))
            {
                let m = Matroid::new(n, r, family).unwrap();
                let dim = polytope_of(&m).dim();
                assert_eq!(is_connected(&m), dim == n - 1, "{m:?}");
            }
        }
    }
}

#[test]
fn indicators_sum_to_rank() {
    for s in k_subsets(6, 3) {
        assert_eq!(indicator(6, &s).iter().sum::<i64>(), 3);
    }
}
