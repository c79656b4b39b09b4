//! Hyperplane arrangements and their Gel'fand–MacPherson points in G(r, n).
//!
//! An arrangement of `n` hyperplanes in P^{r-1} is stored as the `n × r`
//! matrix of its linear forms. The column space of that matrix is the image of
//! the linear embedding `P^{r-1} → P^{n-1}`; its torus translates by
//! `diag(F(u))^{-1}` are exactly the r-planes of the orbit that contain
//! `e = (1, …, 1)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::subsets::k_subsets;
use crate::exact::{maximal_minors, PlueckerVector, Rational, RationalMatrix};

/// `n` linear forms on k^r; row `i` holds the coefficients of `F_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawArrangement")]
pub struct Arrangement {
    r: usize,
    n: usize,
    forms: RationalMatrix,
}

#[derive(Deserialize)]
struct RawArrangement {
    r: usize,
    n: usize,
    forms: RationalMatrix,
}

impl TryFrom<RawArrangement> for Arrangement {
    type Error = Error;
    fn try_from(raw: RawArrangement) -> Result<Self> {
        let a = Arrangement::new(raw.forms)?;
        if a.r != raw.r || a.n != raw.n {
            return Err(Error::DimensionMismatch(format!(
                "declared (r, n) = ({}, {}) but forms are {}x{}",
                raw.r, raw.n, a.n, a.r
            )));
        }
        Ok(a)
    }
}

impl Arrangement {
    /// Wraps an `n × r` matrix of forms; the forms must span (rank r).
    pub fn new(forms: RationalMatrix) -> Result<Self> {
        let (n, r) = (forms.rows(), forms.cols());
        if r == 0 || n < r {
            return Err(Error::BadParams(format!(
                "need n >= r >= 1, got n = {n}, r = {r}"
            )));
        }
        let rank = forms.rank();
        if rank < r {
            return Err(Error::RankDeficient { rank, expected: r });
        }
        Ok(Arrangement { r, n, forms })
    }

    pub fn from_int_forms<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(RationalMatrix::from_int_rows(rows)?)
    }

    /// Points `a_1, …, a_n` of P^1 as the forms `x − a_i y`.
    pub fn points_on_line(points: &[Rational]) -> Result<Self> {
        let rows = points.iter().map(|a| vec![Rational::one(), -a]).collect();
        Self::new(RationalMatrix::from_rows(rows)?)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forms(&self) -> &RationalMatrix {
        &self.forms
    }

    /// Values `F_1(u), …, F_n(u)`.
    pub fn evaluate(&self, u: &AffinePoint) -> Result<Vec<Rational>> {
        if u.coords.len() != self.r {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, arrangement lives in k^{}",
                u.coords.len(),
                self.r
            )));
        }
        Ok((0..self.n)
            .map(|i| {
                self.forms
                    .row(i)
                    .iter()
                    .zip(&u.coords)
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect())
    }

    /// Values of the forms at `u`, failing if `u` lies on a hyperplane.
    fn evaluate_off_hyperplanes(&self, u: &AffinePoint) -> Result<Vec<Rational>> {
        let values = self.evaluate(u)?;
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Err(Error::OnHyperplane(i + 1));
        }
        Ok(values)
    }

    /// The r-subsets of hyperplanes whose forms are linearly dependent.
    pub fn dependent_subsets(&self) -> Vec<Vec<usize>> {
        let cols: Vec<usize> = (0..self.r).collect();
        k_subsets(self.n, self.r)
            .into_iter()
            .filter(|rows| {
                self.forms
                    .minor(rows, &cols)
                    .map(|m| m.is_zero())
                    .unwrap_or(true)
            })
            .collect()
    }
}

/// Homogeneous coordinates of a point of P^{r-1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePoint {
    coords: Vec<Rational>,
}

impl AffinePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::BadParams(
                "the zero vector is not a projective point".into(),
            ));
        }
        Ok(AffinePoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

/// True iff every r of the hyperplanes are independent.
pub fn is_general_position(a: &Arrangement) -> bool {
    a.dependent_subsets().is_empty()
}

/// The point of G(r, n) spanned by the columns of the forms matrix.
pub fn gm_point(a: &Arrangement) -> Result<PlueckerVector> {
    maximal_minors(&a.forms.transpose())
}

/// An `r × n` matrix whose row space is `diag(F(u))^{-1}` applied to the
/// column space of the forms. That row space contains `e`.
pub fn gm_translate(a: &Arrangement, u: &AffinePoint) -> Result<RationalMatrix> {
    let values = a.evaluate_off_hyperplanes(u)?;
    let inverses: Vec<Rational> = values.iter().map(Rational::recip).collect();
    a.forms.transpose().scale_columns(&inverses)
}

/// True iff `e = (1, …, 1)` lies in the row space of `w`.
pub fn contains_e(w: &RationalMatrix) -> bool {
    let e = vec![Rational::one(); w.cols()];
    match w.with_row(&e) {
        Ok(stacked) => stacked.rank() == w.rank(),
        Err(_) => false,
    }
}

/// Coordinates of `v` in the basis of `h = k^n / k·e` given by the images
/// of `e_1, …, e_{n-1}`: `v ↦ (v_i − v_n)_{i<n}`.
pub fn project_to_h(v: &[Rational]) -> Vec<Rational> {
    let last = v.last().cloned().unwrap_or_else(Rational::zero);
    v[..v.len().saturating_sub(1)]
        .iter()
        .map(|x| x - &last)
        .collect()
}

fn check_gauss_params(a: &Arrangement) -> Result<()> {
    if a.r < 2 {
        return Err(Error::BadParams("the Gauss map needs r >= 2".into()));
    }
    Ok(())
}

/// Image of `u` under the Gauss map, as a point of G(r−1, h) = G(r−1, n−1):
/// the plane `gm_translate(a, u)` taken modulo `e`.
pub fn gauss_point(a: &Arrangement, u: &AffinePoint) -> Result<PlueckerVector> {
    check_gauss_params(a)?;
    let w = gm_translate(a, u)?;
    let projected: Vec<Vec<Rational>> = (0..w.rows()).map(|i| project_to_h(w.row(i))).collect();
    let basis = RationalMatrix::from_rows(projected)?.row_space_basis();
    maximal_minors(&basis)
}

/// The same Gauss point computed as the annihilator in `h` of the kernel of
/// `λ ↦ Σ λ_i ∇F_i(u) / F_i(u)` on `h*`.
pub fn gauss_point_by_kernel(a: &Arrangement, u: &AffinePoint) -> Result<PlueckerVector> {
    check_gauss_params(a)?;
    let values = a.evaluate_off_hyperplanes(u)?;
    let (r, n) = (a.r, a.n);
    // h* has basis e_i − e_n (i < n); column i of phi is the image of that basis vector
    let grad = |i: usize, j: usize| a.forms.get(i, j) / &values[i];
    let mut phi = RationalMatrix::zeros(r, n - 1);
    for i in 0..n - 1 {
        for j in 0..r {
            phi.set(j, i, grad(i, j) - grad(n - 1, j));
        }
    }
    let kernel = phi.nullspace();
    let annihilator = RationalMatrix::from_rows_with_cols(kernel, n - 1)?.nullspace();
    if annihilator.len() != r - 1 {
        return Err(Error::RankDeficient {
            rank: annihilator.len(),
            expected: r - 1,
        });
    }
    maximal_minors(&RationalMatrix::from_rows(annihilator)?)
}

/// Diagonal torus action: the coordinate at `S` is scaled by `Π_{i∈S} t_i`.
pub fn torus_act(t: &[Rational], p: &PlueckerVector) -> Result<PlueckerVector> {
    check_torus(t, p.n())?;
    let coords = k_subsets(p.n(), p.r())
        .iter()
        .zip(p.coords())
        .map(|(s, c)| s.iter().map(|&i| &t[i]).fold(c.clone(), |acc, x| acc * x))
        .collect();
    PlueckerVector::new(p.r(), p.n(), coords)
}

/// The same action on a matrix representative: column `i` scaled by `t_i`.
pub fn torus_act_matrix(t: &[Rational], m: &RationalMatrix) -> Result<RationalMatrix> {
    check_torus(t, m.cols())?;
    m.scale_columns(t)
}

fn check_torus(t: &[Rational], n: usize) -> Result<()> {
    if t.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "torus element of length {} acting on k^{n}",
            t.len()
        )));
    }
    if let Some(i) = t.iter().position(Zero::is_zero) {
        return Err(Error::ZeroScale(i + 1));
    }
    Ok(())
}
