//! Named fixtures and seeded generators for arrangements, heights and
//! subdivisions.

use rand::Rng;

use crate::error::Result;
use crate::exact::subsets::{k_subsets, subset_rank};
use crate::exact::{Rational, RationalMatrix};
use crate::grassmann::{is_general_position, AffinePoint, Arrangement};
use crate::polytope::hypersimplex;
use crate::subdivision::{regular_subdivision, HeightFunction, Subdivision};

/// Four points `0, 1, 2, 3` on P^1.
pub fn generic_2_4() -> Arrangement {
    Arrangement::points_on_line(&[0, 1, 2, 3].map(Rational::from)).expect("spanning forms")
}

/// Six lines in general position in P^2.
pub fn generic_3_6() -> Arrangement {
    Arrangement::from_int_forms(&[
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 1],
        [1, 2, 3],
        [1, 3, 7],
    ])
    .expect("spanning forms")
}

/// Nine lines with `B_{i+3} = B_i` for `i = 1, 2, 3`, and `B_7, B_8, B_9`
/// passing through `B_1 ∩ B_2`, `B_2 ∩ B_3`, `B_3 ∩ B_1` respectively.
pub fn nine_lines() -> Arrangement {
    Arrangement::from_int_forms(&[
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 2, 0],
        [0, 1, 3],
        [5, 0, 1],
    ])
    .expect("spanning forms")
}

/// Random integer forms in `[-9, 9]`, resampled until in general position.
pub fn random_generic_arrangement<R: Rng>(r: usize, n: usize, rng: &mut R) -> Arrangement {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..r).map(|_| rng.random_range(-9..=9)).collect())
            .collect();
        if let Ok(a) = Arrangement::from_int_forms(&rows) {
            if is_general_position(&a) {
                return a;
            }
        }
    }
}

/// A random point with small integer coordinates lying on no hyperplane.
pub fn random_point_off<R: Rng>(a: &Arrangement, rng: &mut R) -> AffinePoint {
    loop {
        let coords: Vec<i64> = (0..a.r()).map(|_| rng.random_range(-20..=20)).collect();
        let Ok(u) = AffinePoint::from_ints(&coords) else {
            continue;
        };
        if a.evaluate(&u)
            .map(|v| v.iter().all(|x| !num_traits::Zero::is_zero(x)))
            == Ok(true)
        {
            return u;
        }
    }
}

/// Random `r × n` integer matrix (entries in `[-9, 9]`).
pub fn random_matrix<R: Rng>(r: usize, n: usize, rng: &mut R) -> RationalMatrix {
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..n).map(|_| rng.random_range(-9..=9)).collect())
        .collect();
    RationalMatrix::from_int_rows(&rows).expect("uniform rows")
}

/// Heights `|Σ_{i∈A} x_i − k|` on Δ(r, n); they induce the split along
/// the hyperplane `Σ_{i∈A} x_i = k`.
pub fn split_heights(r: usize, n: usize, a_set: &[usize], k: i64) -> HeightFunction {
    let values: Vec<i64> = k_subsets(n, r)
        .iter()
        .map(|s| {
            let x = s.iter().filter(|i| a_set.contains(i)).count() as i64;
            (x - k).abs()
        })
        .collect();
    HeightFunction::from_ints(&values)
}

/// Tropical maximal minors `min_σ Σ_i M_{i σ(i)}` of a random integer
/// matrix. The induced subdivision is a matroid decomposition.
pub fn tropical_determinant_heights<R: Rng>(r: usize, n: usize, rng: &mut R) -> HeightFunction {
    let m: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..n).map(|_| rng.random_range(0..=12)).collect())
        .collect();
    let values: Vec<i64> = k_subsets(n, r)
        .iter()
        .map(|cols| {
            permutations(r)
                .iter()
                .map(|p| (0..r).map(|i| m[i][cols[p[i]]]).sum::<i64>())
                .min()
                .expect("r >= 1")
        })
        .collect();
    HeightFunction::from_ints(&values)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..k).permutations(k).collect()
}

/// Heights `−d(i, j)` on Δ(2, n) from the leaf metric of a random binary
/// tree with positive edge lengths.
pub fn tree_metric_heights<R: Rng>(n: usize, rng: &mut R) -> HeightFunction {
    // each cluster lists (leaf, distance to the cluster root)
    let mut clusters: Vec<Vec<(usize, i64)>> = (0..n).map(|i| vec![(i, 0)]).collect();
    let mut dist = vec![vec![0i64; n]; n];
    while clusters.len() > 1 {
        let i = rng.random_range(0..clusters.len());
        let a = clusters.swap_remove(i);
        let j = rng.random_range(0..clusters.len());
        let b = clusters.swap_remove(j);
        let (la, lb) = (rng.random_range(1..=5), rng.random_range(1..=5));
        for &(x, dx) in &a {
            for &(y, dy) in &b {
                let d = dx + la + dy + lb;
                dist[x][y] = d;
                dist[y][x] = d;
            }
        }
        let mut merged: Vec<(usize, i64)> = a.into_iter().map(|(x, d)| (x, d + la)).collect();
        merged.extend(b.into_iter().map(|(y, d)| (y, d + lb)));
        clusters.push(merged);
    }
    let values: Vec<i64> = k_subsets(n, 2).iter().map(|s| -dist[s[0]][s[1]]).collect();
    HeightFunction::from_ints(&values)
}

/// Random integer heights in `[-1000, 1000]`.
pub fn random_heights<R: Rng>(len: usize, rng: &mut R) -> HeightFunction {
    let v: Vec<i64> = (0..len).map(|_| rng.random_range(-1000..=1000)).collect();
    HeightFunction::from_ints(&v)
}

/// Two-cell split of Δ(2, 4) along `x_1 + x_2 = 1`.
pub fn split_2_4() -> Result<Subdivision> {
    regular_subdivision(&hypersimplex(2, 4)?, &split_heights(2, 4, &[0, 1], 1))
}

/// Two-cell split of Δ(2, 5) along `x_1 + x_2 = 1`.
pub fn split_2_5() -> Result<Subdivision> {
    regular_subdivision(&hypersimplex(2, 5)?, &split_heights(2, 5, &[0, 1], 1))
}

/// Two-cell split of Δ(3, 5) along `x_1 + x_2 = 1`.
pub fn split_3_5() -> Result<Subdivision> {
    regular_subdivision(&hypersimplex(3, 5)?, &split_heights(3, 5, &[0, 1], 1))
}

/// Two-cell split of Δ(3, 6) along `x_1 + x_2 + x_3 = 1`.
pub fn split_3_6() -> Result<Subdivision> {
    regular_subdivision(&hypersimplex(3, 6)?, &split_heights(3, 6, &[0, 1, 2], 1))
}

/// A regular triangulation of Δ(3, 5) whose cells are not all matroid
/// polytopes; two of its cells contain Γ_{1,2}.
pub fn non_matroidal_3_5() -> Result<Subdivision> {
    let mut h: Vec<i64> = (0..10).map(|i| (i * i * 7 + 3 * i) % 11).collect();
    h[subset_rank(5, &[2, 3, 4])] = -10;
    regular_subdivision(&hypersimplex(3, 5)?, &HeightFunction::from_ints(&h))
}

/// Named matroid decompositions used across the checks: trivial ones, the
/// splits above, tropical-determinant subdivisions of Δ(3, 6) and tree
/// subdivisions of Δ(2, n).
pub fn matroid_decompositions<R: Rng>(rng: &mut R) -> Result<Vec<(String, Subdivision)>> {
    let mut out = Vec::new();
    for (r, n) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
        out.push((
            format!("trivial-{r}-{n}"),
            Subdivision::trivial_hypersimplex(r, n)?,
        ));
    }
    out.push(("split-2-4".into(), split_2_4()?));
    out.push(("split-2-5".into(), split_2_5()?));
    out.push(("split-3-5".into(), split_3_5()?));
    out.push(("split-3-6".into(), split_3_6()?));
    for k in 0..2 {
        let h = tropical_determinant_heights(3, 6, rng);
        out.push((
            format!("tropical-3-6-{k}"),
            regular_subdivision(&hypersimplex(3, 6)?, &h)?,
        ));
    }
    for n in [5, 6] {
        let h = tree_metric_heights(n, rng);
        out.push((
            format!("tree-2-{n}"),
            regular_subdivision(&hypersimplex(2, n)?, &h)?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivision::{is_matroid_decomposition, validate};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixtures_are_what_they_claim() {
        assert!(is_general_position(&generic_2_4()));
        assert!(is_general_position(&generic_3_6()));
        assert!(!is_general_position(&nine_lines()));
    }

    #[test]
    fn splits_have_two_matroid_cells() {
        for s in [split_2_4(), split_2_5(), split_3_5(), split_3_6()] {
            let s = s.unwrap();
            assert_eq!(s.cells().len(), 2);
            assert!(validate(&s).passed());
            assert_eq!(is_matroid_decomposition(&s), Ok(true));
        }
    }

    #[test]
    fn tropical_heights_give_matroid_decompositions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (r, n) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
            for _ in 0..3 {
                let h = tropical_determinant_heights(r, n, &mut rng);
                let s = regular_subdivision(&hypersimplex(r, n).unwrap(), &h).unwrap();
                assert_eq!(
                    is_matroid_decomposition(&s),
                    Ok(true),
                    "({r},{n}) {:?}",
                    s.cells()
                );
            }
        }
    }

    #[test]
    fn tree_heights_give_matroid_decompositions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 4..=6 {
            let h = tree_metric_heights(n, &mut rng);
            let s = regular_subdivision(&hypersimplex(2, n).unwrap(), &h).unwrap();
            assert_eq!(is_matroid_decomposition(&s), Ok(true));
        }
    }
}
