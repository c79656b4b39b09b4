//! Coordinates on the affine span of a point set.

use num_traits::Zero;

use crate::exact::{Rational, RationalMatrix};

/// An origin and an ordered basis of the direction space of a point set,
/// together with the data needed to solve for coordinates.
#[derive(Clone, Debug)]
pub struct AffineFrame {
    origin: Vec<Rational>,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    // inverse of the basis restricted to the pivot columns
    solve: RationalMatrix,
}

impl AffineFrame {
    /// Origin at the first point; basis vectors are the differences
    /// `p_j − p_0` that increase the rank, taken greedily in order.
    pub fn from_points(points: &[Vec<Rational>]) -> Self {
        let origin = points.first().cloned().unwrap_or_default();
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        let ambient = origin.len();
        for p in points.iter().skip(1) {
            let diff: Vec<Rational> = p.iter().zip(&origin).map(|(a, b)| a - b).collect();
            let mut trial = basis.clone();
            trial.push(diff.clone());
            let m = RationalMatrix::from_rows_with_cols(trial, ambient).expect("uniform width");
            if m.rank() > basis.len() {
                basis.push(diff);
            }
        }
        Self::with_basis(origin, basis)
    }

    pub fn from_int_points(points: &[&[i64]]) -> Self {
        let pts: Vec<Vec<Rational>> = points.iter().map(|p| to_rational(p)).collect();
        Self::from_points(&pts)
    }

    /// A frame with an explicit, linearly independent basis.
    pub fn with_basis(origin: Vec<Rational>, basis: Vec<Vec<Rational>>) -> Self {
        let ambient = origin.len();
        let m = RationalMatrix::from_rows_with_cols(basis.clone(), ambient).expect("uniform width");
        let (_, pivots) = m.rref();
        let rows: Vec<usize> = (0..basis.len()).collect();
        let solve = m
            .select(&rows, &pivots)
            .and_then(|s| s.inverse())
            .expect("independent basis");
        AffineFrame {
            origin,
            basis,
            pivots,
            solve,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn origin(&self) -> &[Rational] {
        &self.origin
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Coordinates of a direction vector in the basis, or `None` if it is
    /// not in the span.
    pub fn linear_coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let d = self.dim();
        // c · B_piv = v_piv
        let coords: Vec<Rational> = (0..d)
            .map(|j| {
                self.pivots
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| &v[p] * self.solve.get(k, j))
                    .sum()
            })
            .collect();
        let ok = (0..v.len()).all(|i| {
            let recon: Rational = coords.iter().zip(&self.basis).map(|(c, b)| c * &b[i]).sum();
            recon == v[i]
        });
        ok.then_some(coords)
    }

    /// Affine coordinates of a point, or `None` outside the affine span.
    pub fn coords(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let v: Vec<Rational> = x.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        self.linear_coords(&v)
    }

    pub fn int_coords(&self, x: &[i64]) -> Option<Vec<Rational>> {
        self.coords(&to_rational(x))
    }
}

pub fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

/// Affine rank of a point set (dimension of its affine span).
pub fn affine_dim(points: &[Vec<Rational>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rational>> = points
        .iter()
        .skip(1)
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() || diffs.iter().flatten().all(Zero::is_zero) {
        return 0;
    }
    RationalMatrix::from_rows(diffs)
        .expect("uniform width")
        .rank()
}
