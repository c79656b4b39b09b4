use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{denominator_lcm, Rational};
use crate::error::{Error, Result};

/// A dense `rows × cols` matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(RationalMatrix {
            rows: nrows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix with an explicit column count, so that zero-row matrices keep their width.
    pub fn from_rows_with_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(
                "row length differs from column count".into(),
            ));
        }
        let nrows = rows.len();
        Ok(RationalMatrix {
            rows: nrows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Submatrix on the given row and column indices (0-based, in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if let Some(&i) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange(format!("row {i} of {}", self.rows)));
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange(format!(
                "column {j} of {}",
                self.cols
            )));
        }
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Ok(RationalMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        })
    }

    /// Appends one row at the bottom.
    pub fn with_row(&self, row: &[Rational]) -> Result<Self> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} for {} columns",
                row.len(),
                self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(row);
        Ok(RationalMatrix {
            rows: self.rows + 1,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Multiplies column `j` by `scales[j]`.
    pub fn scale_columns(&self, scales: &[Rational]) -> Result<Self> {
        if scales.len() != self.cols {
            return Err(Error::DimensionMismatch("column scale count".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, s) in scales.iter().enumerate() {
                out.set(i, j, self.get(i, j) * s);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Rank over the rationals via fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.integer_rows()).0
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let scales: Vec<BigInt> = (0..self.rows)
            .map(|i| denominator_lcm(self.row(i)))
            .collect();
        let (rank, det) = bareiss(self.integer_rows());
        if rank < self.rows {
            return Ok(Rational::zero());
        }
        let scale: BigInt = scales.iter().product();
        Ok(Rational::new(det, scale))
    }

    /// Determinant of the submatrix on `rows × cols` (0-based index sets).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Rational> {
        if rows.len() != cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows and {} columns selected",
                rows.len(),
                cols.len()
            )));
        }
        self.select(rows, cols)?.determinant()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Inverse of a nonsingular square matrix.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {n}x{} matrix",
                self.cols
            )));
        }
        if n == 0 {
            return Ok(RationalMatrix::zeros(0, 0));
        }
        let mut aug = RationalMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            let rank = pivots.iter().filter(|&&p| p < n).count();
            return Err(Error::RankDeficient { rank, expected: n });
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        m.select(&rows, &cols)
    }

    /// A basis of the row space (the nonzero rows of the RREF).
    pub fn row_space_basis(&self) -> RationalMatrix {
        let (m, pivots) = self.rref();
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        RationalMatrix::from_rows_with_cols(rows, self.cols).expect("rows have matrix width")
    }

    /// A basis of the right kernel `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -m.get(i, f);
                }
                x
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = denominator_lcm(row);
                row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .collect()
    }
}

/// Fraction-free (Bareiss) forward elimination. Returns the rank and, for a
/// nonsingular square input, its determinant.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut sign = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if r == nrows && nrows == ncols && nrows > 0 {
        prev * sign
    } else {
        BigInt::zero()
    };
    (r, det)
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        RationalMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        let m = RationalMatrix::from_int_rows(&[[1, 2], [2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(RationalMatrix::zeros(2, 3).rank(), 0);
        // rank-deficient with a skipped pivot column
        let m = RationalMatrix::from_int_rows(&[[0, 1, 2], [0, 2, 4], [1, 0, 0]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn minors() {
        let id = RationalMatrix::identity(3);
        assert_eq!(id.minor(&[0, 1], &[0, 1]).unwrap(), q(1));
        let m = RationalMatrix::from_int_rows(&[[1, 1], [1, 2]]).unwrap();
        assert_eq!(m.minor(&[0, 1], &[0, 1]).unwrap(), q(1));
        assert_eq!(m.minor(&[1], &[0]).unwrap(), q(1));
        assert!(m.minor(&[0, 5], &[0, 1]).is_err());
        assert!(m.minor(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn determinant_with_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![Rational::new(1, 2), Rational::new(1, 3)],
            vec![Rational::new(1, 4), Rational::new(1, 5)],
        ])
        .unwrap();
        // 1/10 - 1/12 = 1/60
        assert_eq!(m.determinant().unwrap(), Rational::new(1, 60));
        let swapped = RationalMatrix::from_int_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(swapped.determinant().unwrap(), q(-1));
    }

    #[test]
    fn nullspace_is_kernel() {
        let m = RationalMatrix::from_int_rows(&[[1, 2, 3], [2, 4, 7]]).unwrap();
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        let x = RationalMatrix::from_rows(ker).unwrap().transpose();
        assert!(m.mul(&x).unwrap().is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = RationalMatrix::from_int_rows(&[[2, 1], [7, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(2));
        let singular = RationalMatrix::from_int_rows(&[[1, 2], [2, 4]]).unwrap();
        assert!(singular.inverse().is_err());
    }
}
