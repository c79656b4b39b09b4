//! Exact rational scalars and matrices, minors, rank and Plücker coordinates.

mod matrix;
mod pluecker;
mod rational;
pub mod subsets;

pub use matrix::RationalMatrix;
pub use pluecker::{coordinate_plane, maximal_minors, pluecker_relations_ok, PlueckerVector};
pub use rational::Rational;

/// Rank over the rationals.
pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

/// Exact determinant of the submatrix selected by 0-based row and column sets.
pub fn minor(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> crate::Result<Rational> {
    m.minor(rows, cols)
}
