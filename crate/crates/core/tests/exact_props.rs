use contour_core::exact::subsets::k_subsets;
use contour_core::exact::{maximal_minors, pluecker_relations_ok};
use contour_core::{Rational, RationalMatrix};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, cols), rows)
}

fn to_matrix(rows: &[Vec<i64>]) -> RationalMatrix {
    RationalMatrix::from_int_rows(rows).unwrap()
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return Rational::from(1);
    }
    let mut total = Rational::from(0);
    for j in 0..m.len() {
        let sub: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&sub);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_invariant_under_row_ops_and_transpose(
        rows in matrix(3, 5),
        (i, j) in (0usize..3, 0usize..3),
        c in -4i64..=4,
    ) {
        let m = to_matrix(&rows);
        let mut moved = rows.clone();
        if i != j {
            for k in 0..5 {
                moved[i][k] += c * rows[j][k];
            }
        }
        moved.swap(0, 2);
        prop_assert_eq!(to_matrix(&moved).rank(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn minors_satisfy_pluecker_relations(rows in matrix(3, 6)) {
        let m = to_matrix(&rows);
        if let Ok(p) = maximal_minors(&m) {
            prop_assert!(pluecker_relations_ok(&p));
        }
    }

    #[test]
    fn minors_match_cofactor_expansion_2x5(rows in matrix(2, 5)) {
        check_minors(&rows)?;
    }

    #[test]
    fn minors_match_cofactor_expansion_3x6(rows in matrix(3, 6)) {
        check_minors(&rows)?;
    }
}

fn check_minors(rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let m = to_matrix(rows);
    let r = rows.len();
    let n = rows[0].len();
    let Ok(p) = maximal_minors(&m) else {
        prop_assert!(m.rank() < r);
        return Ok(());
    };
    for (k, cols) in k_subsets(n, r).iter().enumerate() {
        let sub: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| cols.iter().map(|&c| Rational::from(row[c])).collect())
            .collect();
        prop_assert_eq!(&p.coords()[k], &cofactor_det(&sub));
    }
    Ok(())
}

#[test]
fn inverse_of_random_unimodular() {
    let m = to_matrix(&[vec![2, 1, 0], vec![1, 1, 0], vec![0, 3, 1]]);
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(3));
}
