//! Lattice polytopes, the hypersimplex, facet enumeration and face posets.

mod dd;
mod faces;
mod frame;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::subsets::k_subsets;
use crate::exact::Rational;

pub use dd::{extreme_rays, integralize, primitive, Ray};
pub(crate) use faces::intersect;
pub use faces::{face_poset, incidence, Face, FacePoset};
pub use frame::{affine_dim, to_rational, AffineFrame};

/// A polytope given by its vertices in Z^n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPolytope")]
pub struct LatticePolytope {
    ambient: usize,
    vertices: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawPolytope {
    ambient: usize,
    vertices: Vec<Vec<i64>>,
}

impl TryFrom<RawPolytope> for LatticePolytope {
    type Error = Error;
    fn try_from(raw: RawPolytope) -> Result<Self> {
        LatticePolytope::new(raw.ambient, raw.vertices)
    }
}

impl LatticePolytope {
    pub fn new(ambient: usize, vertices: Vec<Vec<i64>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::BadParams(
                "a polytope needs at least one vertex".into(),
            ));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "vertex of length {} in Z^{ambient}",
                v.len()
            )));
        }
        let distinct: HashSet<&Vec<i64>> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::BadParams("repeated vertex".into()));
        }
        Ok(LatticePolytope { ambient, vertices })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn dim(&self) -> usize {
        let pts: Vec<Vec<Rational>> = self.vertices.iter().map(|v| to_rational(v)).collect();
        affine_dim(&pts)
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    /// Vertex sets of the facets.
    pub fn facets(&self) -> Result<Vec<Vec<usize>>> {
        Ok(HRep::of_points(&self.vertices)?.facets().to_vec())
    }
}

/// Vertices `e_{i_1} + … + e_{i_r}` of Δ(r, n), in lexicographic order of the subsets.
pub fn hypersimplex(r: usize, n: usize) -> Result<LatticePolytope> {
    if r < 1 || r + 1 > n {
        return Err(Error::BadParams(format!(
            "hypersimplex needs 1 <= r <= n-1, got r = {r}, n = {n}"
        )));
    }
    let vertices = k_subsets(n, r).iter().map(|s| indicator(n, s)).collect();
    LatticePolytope::new(n, vertices)
}

/// The 0/1 vector of a subset of `0..n`.
pub fn indicator(n: usize, subset: &[usize]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &i in subset {
        v[i] = 1;
    }
    v
}

/// Facet description of the convex hull of a point set, inside its own
/// affine span: inequalities `b + c · x ≥ 0` on frame coordinates `x`.
#[derive(Clone, Debug)]
pub struct HRep {
    frame: AffineFrame,
    inequalities: Vec<Vec<BigInt>>,
    facets: Vec<Vec<usize>>,
}

impl HRep {
    /// Uses a frame built from the points themselves.
    pub fn of_points(points: &[Vec<i64>]) -> Result<Self> {
        let pts: Vec<Vec<Rational>> = points.iter().map(|v| to_rational(v)).collect();
        Self::in_frame(points, AffineFrame::from_points(&pts))
    }

    /// Uses a given frame, in which the points must be full-dimensional.
    pub fn in_frame(points: &[Vec<i64>], frame: AffineFrame) -> Result<Self> {
        let d = frame.dim();
        let coords = points
            .iter()
            .map(|p| {
                frame.int_coords(p).ok_or_else(|| {
                    Error::DimensionMismatch("point outside the affine span of the frame".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if d == 0 {
            return Ok(HRep {
                frame,
                inequalities: Vec::new(),
                facets: Vec::new(),
            });
        }
        let rows: Vec<Vec<BigInt>> = coords
            .iter()
            .map(|c| {
                let mut row = vec![Rational::from(1)];
                row.extend(c.iter().cloned());
                integralize(&row)
            })
            .collect();
        let rays = extreme_rays(&rows, d + 1)?;
        let mut pairs: Vec<(Vec<usize>, Vec<BigInt>)> = rays
            .into_iter()
            .map(|ray| (ray.tight.ones().collect(), ray.dir))
            .collect();
        pairs.sort();
        let (facets, inequalities) = pairs.into_iter().unzip();
        Ok(HRep {
            frame,
            inequalities,
            facets,
        })
    }

    pub fn frame(&self) -> &AffineFrame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// Each inequality as `(b, c_1, …, c_d)`.
    pub fn inequalities(&self) -> &[Vec<BigInt>] {
        &self.inequalities
    }

    /// Vertex-index sets of the facets, parallel to `inequalities`.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Value of inequality `k` at frame coordinates `x`.
    pub fn slack(&self, k: usize, x: &[Rational]) -> Rational {
        let ineq = &self.inequalities[k];
        let mut total = Rational::from(ineq[0].clone());
        for (c, xi) in ineq[1..].iter().zip(x) {
            total += Rational::from(c.clone()) * xi;
        }
        total
    }

    /// Exact membership of a point of the ambient space in the hull.
    pub fn contains(&self, x: &[Rational]) -> bool {
        match self.frame.coords(x) {
            None => false,
            Some(c) => (0..self.inequalities.len()).all(|k| !self.slack(k, &c).is_negative()),
        }
    }

    /// Membership in the relative interior.
    pub fn contains_relative_interior(&self, x: &[Rational]) -> bool {
        match self.frame.coords(x) {
            None => false,
            Some(c) => (0..self.inequalities.len()).all(|k| self.slack(k, &c).is_positive()),
        }
    }

    /// Indices of the facets on which the point lies.
    pub fn tight_facets(&self, x: &[Rational]) -> Option<Vec<usize>> {
        let c = self.frame.coords(x)?;
        Some(
            (0..self.inequalities.len())
                .filter(|&k| self.slack(k, &c).is_zero())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersimplex_counts() {
        let p = hypersimplex(1, 3).unwrap();
        assert_eq!((p.num_vertices(), p.dim()), (3, 2));
        assert_eq!(p.facets().unwrap().len(), 3);
        let p = hypersimplex(2, 4).unwrap();
        assert_eq!((p.num_vertices(), p.dim()), (6, 3));
        assert_eq!(p.facets().unwrap().len(), 8);
        let p = hypersimplex(2, 5).unwrap();
        assert_eq!((p.num_vertices(), p.dim()), (10, 4));
        assert_eq!(p.facets().unwrap().len(), 10);
        assert!(hypersimplex(0, 3).is_err());
        assert!(hypersimplex(3, 3).is_err());
    }

    #[test]
    fn hypersimplex_vertices_lex() {
        let p = hypersimplex(2, 3).unwrap();
        assert_eq!(p.vertices(), &[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn hrep_membership() {
        let p = hypersimplex(2, 4).unwrap();
        let h = HRep::of_points(p.vertices()).unwrap();
        let half = |v: [i64; 4]| v.iter().map(|&x| Rational::new(x, 2)).collect::<Vec<_>>();
        assert!(h.contains(&half([1, 1, 1, 1])));
        assert!(h.contains_relative_interior(&half([1, 1, 1, 1])));
        assert!(!h.contains(
            &half([2, 2, 0, 0])
                .iter()
                .map(|x| x * Rational::from(2))
                .collect::<Vec<_>>()
        ));
        assert!(!h.contains(&to_rational(&[1, 1, 1, 0])));
    }

    #[test]
    fn duplicate_vertices_rejected() {
        assert!(LatticePolytope::new(2, vec![vec![0, 0], vec![0, 0]]).is_err());
    }
}
