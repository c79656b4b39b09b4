//! Double description: extreme rays of a pointed polyhedral cone
//! `{y : A y ≥ 0}` over the integers.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};

/// An extreme ray together with the constraint rows it satisfies with equality.
#[derive(Clone, Debug)]
pub struct Ray {
    pub dir: Vec<BigInt>,
    pub tight: FixedBitSet,
}

/// Divides out the content of an integer vector.
pub fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and makes it primitive.
pub fn integralize(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    primitive(v.iter().map(|q| q.numer() * (&l / q.denom())).collect())
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_matrix(rows: &[&Vec<BigInt>], cols: usize) -> RationalMatrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|x| Rational::from(x.clone())).collect())
        .collect();
    RationalMatrix::from_rows_with_cols(rows, cols).expect("uniform width")
}

/// Extreme rays of `{y ∈ Q^D : A y ≥ 0}` as primitive integer vectors.
///
/// The cone must be pointed, i.e. `A` must have rank `D`; otherwise
/// `RankDeficient` is returned.
pub fn extreme_rays(a: &[Vec<BigInt>], dim: usize) -> Result<Vec<Ray>> {
    let m = a.len();
    if let Some(row) = a.iter().find(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "constraint of length {} in dimension {dim}",
            row.len()
        )));
    }
    // greedy choice of D independent rows
    let mut basis: Vec<usize> = Vec::with_capacity(dim);
    for i in 0..m {
        if basis.len() == dim {
            break;
        }
        let mut trial: Vec<&Vec<BigInt>> = basis.iter().map(|&j| &a[j]).collect();
        trial.push(&a[i]);
        if to_matrix(&trial, dim).rank() == trial.len() {
            basis.push(i);
        }
    }
    if basis.len() < dim {
        return Err(Error::RankDeficient {
            rank: basis.len(),
            expected: dim,
        });
    }
    let b = to_matrix(&basis.iter().map(|&j| &a[j]).collect::<Vec<_>>(), dim);
    let inv = b.inverse()?;
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let mut tight = FixedBitSet::with_capacity(m);
            for (k, &row) in basis.iter().enumerate() {
                if k != j {
                    tight.insert(row);
                }
            }
            Ray {
                dir: integralize(&inv.column(j)),
                tight,
            }
        })
        .collect();

    let mut in_basis = FixedBitSet::with_capacity(m);
    for &j in &basis {
        in_basis.insert(j);
    }
    for (i, row) in a.iter().enumerate() {
        if in_basis.contains(i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.dir)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (ray, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    ray.tight.insert(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&k| values[k].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&k| values[k].is_negative())
            .collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].tight.clone();
                common.intersect_with(&rays[q].tight);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && common.is_subset(&r.tight));
                if blocked {
                    continue;
                }
                let (vp, vq) = (&values[p], &values[q]);
                let dir: Vec<BigInt> = rays[q]
                    .dir
                    .iter()
                    .zip(&rays[p].dir)
                    .map(|(y, x)| vp * y - vq * x)
                    .collect();
                let mut tight = common;
                tight.insert(i);
                created.push(Ray {
                    dir: primitive(dir),
                    tight,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut ray, v) in rays.into_iter().zip(values) {
            if v.is_zero() {
                ray.tight.insert(i);
                next.push(ray);
            } else if v.is_positive() {
                next.push(ray);
            }
        }
        next.extend(created);
        rays = next;
    }
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn sorted_dirs(rays: &[Ray]) -> Vec<Vec<BigInt>> {
        let mut v: Vec<_> = rays.iter().map(|r| r.dir.clone()).collect();
        v.sort();
        v
    }

    #[test]
    fn orthant() {
        let a = big(&[&[1, 0], &[0, 1]]);
        let rays = extreme_rays(&a, 2).unwrap();
        assert_eq!(sorted_dirs(&rays), big(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn square_cone_has_four_rays() {
        // homogenized unit square: facets of the square x,y in [0,1]
        let a = big(&[&[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1]]);
        let rays = extreme_rays(&a, 3).unwrap();
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert_eq!(r.tight.count_ones(..), 2);
            assert!(a.iter().all(|row| !dot(row, &r.dir).is_negative()));
        }
    }

    #[test]
    fn redundant_row_does_not_add_rays() {
        let a = big(&[&[1, 0], &[0, 1], &[1, 1]]);
        let rays = extreme_rays(&a, 2).unwrap();
        assert_eq!(rays.len(), 2);
    }

    #[test]
    fn non_pointed_rejected() {
        let a = big(&[&[1, 0]]);
        assert!(matches!(
            extreme_rays(&a, 2),
            Err(Error::RankDeficient { .. })
        ));
    }
}
