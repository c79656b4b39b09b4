//! Exact combinatorics and linear algebra for compactified moduli of
//! hyperplane arrangements: Plücker coordinates, matroid polytopes,
//! subdivisions of hypersimplices, stable toric algebras, cellular
//! cohomology and log-form residues, all over the rationals.

pub mod error;
pub mod exact;
pub mod grassmann;
pub mod homology;
pub mod matroid;
pub mod polytope;
pub mod presets;
pub mod residue;
pub mod stanley;
pub mod subdivision;

pub use error::{Error, Result};
pub use exact::{PlueckerVector, Rational, RationalMatrix};
