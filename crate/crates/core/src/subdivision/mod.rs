//! Subdivisions of lattice polytopes (mostly hypersimplices): regular
//! subdivisions from heights, validation, matroid decompositions, boundary
//! classification, strata and the special faces Γ_I.

mod gamma;
mod strata;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::subsets::{k_subsets, parse_subset_key, subset_key, subset_rank};
use crate::exact::Rational;
use crate::matroid::is_matroid_subpolytope;
use crate::polytope::{
    affine_dim, hypersimplex, integralize, to_rational, AffineFrame, FacePoset, HRep,
    LatticePolytope,
};

pub use gamma::{cell_containing_gamma, gamma_face, CellReport};
pub use strata::{strata_poset, StrataPoset, Stratum};
pub use validate::{validate, ValidationReport};

/// A base polytope together with maximal cells given as sets of base
/// vertex indices.
#[derive(Clone, Debug)]
pub struct Subdivision {
    base: LatticePolytope,
    cells: Vec<Vec<usize>>,
    complex: OnceLock<std::result::Result<SubdivisionComplex, Error>>,
}

impl PartialEq for Subdivision {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.cells == other.cells
    }
}

impl Eq for Subdivision {}

/// Heights on the vertices of a base polytope, in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    values: Vec<Rational>,
}

/// Where a face of a subdivision of Δ(r, n) sits relative to ∂Δ(r, n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryLabel {
    #[serde(rename = "interior")]
    Interior,
    /// Contained in a facet `x_i = 1` but in no facet `x_i = 0`.
    #[serde(rename = "x=1")]
    UpperBoundary,
    /// Contained in some facet `x_i = 0`.
    #[serde(rename = "x=0")]
    LowerBoundary,
}

/// Derived data of a subdivision: the glued face poset, boundary flags and
/// a facet description of every face.
#[derive(Clone, Debug)]
pub struct SubdivisionComplex {
    poset: FacePoset,
    on_boundary: Vec<bool>,
    labels: Vec<BoundaryLabel>,
    hreps: Vec<HRep>,
}

impl SubdivisionComplex {
    pub fn poset(&self) -> &FacePoset {
        &self.poset
    }

    /// Whether face `i` lies in the boundary of the base polytope.
    pub fn on_boundary(&self, i: usize) -> bool {
        self.on_boundary[i]
    }

    pub fn label(&self, i: usize) -> BoundaryLabel {
        self.labels[i]
    }

    pub fn hrep(&self, i: usize) -> &HRep {
        &self.hreps[i]
    }

    /// Faces whose cone contains the lattice point `a` at level `d`, i.e.
    /// faces containing `a / d`; every face when `d = 0` and `a = 0`.
    pub fn faces_containing(&self, a: &[i64], d: i64) -> Vec<usize> {
        if d == 0 {
            return if a.iter().all(|&x| x == 0) {
                (0..self.poset.len()).collect()
            } else {
                Vec::new()
            };
        }
        let x: Vec<Rational> = a.iter().map(|&ai| Rational::new(ai, d)).collect();
        (0..self.poset.len())
            .filter(|&i| self.hreps[i].contains(&x))
            .collect()
    }
}

impl HeightFunction {
    pub fn new(values: Vec<Rational>) -> Self {
        HeightFunction { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(to_rational(values))
    }

    pub fn constant(len: usize) -> Self {
        Self::new(vec![Rational::zero(); len])
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Heights on Δ(r, n) keyed by 1-based subset strings such as `"1,2"`.
    pub fn from_keyed(r: usize, n: usize, map: &BTreeMap<String, Rational>) -> Result<Self> {
        let mut values = vec![None; k_subsets(n, r).len()];
        for (key, v) in map {
            let s = parse_subset_key(key)
                .filter(|s| {
                    s.len() == r && s.iter().all(|&i| i < n) && s.windows(2).all(|w| w[0] < w[1])
                })
                .ok_or_else(|| Error::Parse(format!("bad height key {key:?} for Δ({r},{n})")))?;
            values[subset_rank(n, &s)] = Some(v.clone());
        }
        let values = values
            .into_iter()
            .zip(k_subsets(n, r))
            .map(|(v, s)| {
                v.ok_or_else(|| Error::Parse(format!("missing height for {}", subset_key(&s))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(values))
    }

    pub fn to_keyed(&self, r: usize, n: usize) -> BTreeMap<String, Rational> {
        k_subsets(n, r)
            .iter()
            .zip(&self.values)
            .map(|(s, v)| (subset_key(s), v.clone()))
            .collect()
    }
}

/// Recognises Δ(r, n) as a base polytope.
pub fn hypersimplex_params(p: &LatticePolytope) -> Option<(usize, usize)> {
    let n = p.ambient();
    let r = p.vertices()[0].iter().sum::<i64>();
    if r < 1 {
        return None;
    }
    let h = hypersimplex(r as usize, n).ok()?;
    (h == *p).then_some((r as usize, n))
}

impl Subdivision {
    /// Cells are sorted internally and listed in lexicographic order.
    pub fn new(base: LatticePolytope, cells: Vec<Vec<usize>>) -> Result<Self> {
        let nv = base.num_vertices();
        let mut cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        if cells.is_empty() || cells.iter().any(Vec::is_empty) {
            return Err(Error::InvalidSubdivision(
                "empty cell list or empty cell".into(),
            ));
        }
        if let Some(&i) = cells.iter().flatten().find(|&&i| i >= nv) {
            return Err(Error::IndexOutOfRange(format!("vertex {i} of {nv}")));
        }
        cells.sort();
        Ok(Subdivision {
            base,
            cells,
            complex: OnceLock::new(),
        })
    }

    pub fn trivial(base: LatticePolytope) -> Self {
        let all = (0..base.num_vertices()).collect();
        Self::new(base, vec![all]).expect("nonempty base")
    }

    /// The trivial subdivision of Δ(r, n).
    pub fn trivial_hypersimplex(r: usize, n: usize) -> Result<Self> {
        Ok(Self::trivial(hypersimplex(r, n)?))
    }

    /// A subdivision of Δ(r, n) from cells given as lists of r-subsets.
    pub fn from_subsets(r: usize, n: usize, cells: &[Vec<Vec<usize>>]) -> Result<Self> {
        let base = hypersimplex(r, n)?;
        let cells = cells
            .iter()
            .map(|cell| {
                cell.iter()
                    .map(|s| {
                        let mut s = s.clone();
                        s.sort_unstable();
                        if s.len() != r
                            || s.iter().any(|&i| i >= n)
                            || s.windows(2).any(|w| w[0] == w[1])
                        {
                            return Err(Error::IndexOutOfRange(format!(
                                "{s:?} is not an {r}-subset of [{n}]"
                            )));
                        }
                        Ok(subset_rank(n, &s))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, cells)
    }

    pub fn base(&self) -> &LatticePolytope {
        &self.base
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// `(r, n)` when the base is Δ(r, n).
    pub fn params(&self) -> Result<(usize, usize)> {
        hypersimplex_params(&self.base)
            .ok_or_else(|| Error::BadParams("base polytope is not a hypersimplex".into()))
    }

    /// Cells as lists of 0-based r-subsets (hypersimplex bases only).
    pub fn cell_subsets(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        self.params()?;
        Ok(self
            .cells
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&v| support(&self.base.vertices()[v]))
                    .collect()
            })
            .collect())
    }

    /// Lazily built glued complex.
    pub fn complex(&self) -> Result<&SubdivisionComplex> {
        self.complex
            .get_or_init(|| build_complex(&self.base, &self.cells))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The same subdivision with one cell removed (for negative tests).
    pub fn without_cell(&self, i: usize) -> Result<Self> {
        let mut cells = self.cells.clone();
        if i >= cells.len() {
            return Err(Error::IndexOutOfRange(format!(
                "cell {i} of {}",
                cells.len()
            )));
        }
        cells.remove(i);
        Self::new(self.base.clone(), cells)
    }
}

pub(crate) fn support(v: &[i64]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i] != 0).collect()
}

fn build_complex(base: &LatticePolytope, cells: &[Vec<usize>]) -> Result<SubdivisionComplex> {
    let poset = FacePoset::from_cells(base.vertices(), cells)?;
    let base_facets = HRep::of_points(base.vertices())?.facets().to_vec();
    let verts = base.vertices();
    let mut on_boundary = Vec::with_capacity(poset.len());
    let mut labels = Vec::with_capacity(poset.len());
    let mut hreps = Vec::with_capacity(poset.len());
    for face in poset.faces() {
        let fv = &face.vertices;
        on_boundary.push(
            base_facets
                .iter()
                .any(|f| fv.iter().all(|v| f.binary_search(v).is_ok())),
        );
        let constant =
            |value: i64| (0..base.ambient()).any(|i| fv.iter().all(|&v| verts[v][i] == value));
        labels.push(if constant(0) {
            BoundaryLabel::LowerBoundary
        } else if constant(1) {
            BoundaryLabel::UpperBoundary
        } else {
            BoundaryLabel::Interior
        });
        let pts: Vec<Vec<i64>> = fv.iter().map(|&v| verts[v].clone()).collect();
        hreps.push(HRep::of_points(&pts)?);
    }
    Ok(SubdivisionComplex {
        poset,
        on_boundary,
        labels,
        hreps,
    })
}

/// Projections of the lower facets of `conv{(v, w(v))}`. Heights that are
/// affine on the base give the trivial subdivision.
pub fn regular_subdivision(p: &LatticePolytope, w: &HeightFunction) -> Result<Subdivision> {
    if w.values.len() != p.num_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "{} heights for {} vertices",
            w.values.len(),
            p.num_vertices()
        )));
    }
    let rational: Vec<Vec<Rational>> = p.vertices().iter().map(|v| to_rational(v)).collect();
    let frame = AffineFrame::from_points(&rational);
    let d = frame.dim();
    let lifted: Vec<Vec<Rational>> = rational
        .iter()
        .zip(&w.values)
        .map(|(v, h)| {
            let mut c = frame.coords(v).expect("vertex lies in its own span");
            c.push(h.clone());
            c
        })
        .collect();
    if affine_dim(&lifted) == d {
        return Ok(Subdivision::trivial(p.clone()));
    }
    let rows: Vec<Vec<BigInt>> = lifted
        .iter()
        .map(|c| {
            let mut row = vec![Rational::from(1)];
            row.extend(c.iter().cloned());
            integralize(&row)
        })
        .collect();
    let rays = crate::polytope::extreme_rays(&rows, d + 2)?;
    // inequality b + c·x + h·z >= 0 bounds the hull from below iff h > 0
    let cells: BTreeSet<Vec<usize>> = rays
        .into_iter()
        .filter(|ray| ray.dir[d + 1].is_positive())
        .map(|ray| ray.tight.ones().collect())
        .collect();
    Subdivision::new(p.clone(), cells.into_iter().collect())
}

/// True iff every maximal cell is a matroid polytope.
pub fn is_matroid_decomposition(s: &Subdivision) -> Result<bool> {
    let (r, n) = s.params()?;
    let report = validate(s);
    if !report.passed() {
        return Err(Error::InvalidSubdivision(report.failures.join("; ")));
    }
    let cells = s.cell_subsets()?;
    Ok(cells.iter().all(|c| is_matroid_subpolytope(r, n, c)))
}

/// Boundary label of every face of the glued complex, in poset order.
pub fn classify_boundary_faces(s: &Subdivision) -> Result<Vec<BoundaryLabel>> {
    s.params()?;
    Ok(s.complex()?.labels.clone())
}

/// JSON form `{ "r", "n", "cells": [[[1-based r-subset], …], …] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub r: usize,
    pub n: usize,
    pub cells: Vec<Vec<Vec<usize>>>,
}

impl SubdivisionJson {
    pub fn from_subdivision(s: &Subdivision) -> Result<Self> {
        let (r, n) = s.params()?;
        let cells = s
            .cell_subsets()?
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|b| b.into_iter().map(|i| i + 1).collect())
                    .collect()
            })
            .collect();
        Ok(SubdivisionJson { r, n, cells })
    }

    pub fn to_subdivision(&self) -> Result<Subdivision> {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                c.iter()
                    .map(|b| {
                        b.iter()
                            .map(|&i| {
                                i.checked_sub(1).ok_or_else(|| {
                                    Error::IndexOutOfRange("indices are 1-based".into())
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Subdivision::from_subsets(self.r, self.n, &cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn split_2_4() -> Subdivision {
        let base = hypersimplex(2, 4).unwrap();
        // vertex order: 12 13 14 23 24 34
        regular_subdivision(&base, &HeightFunction::from_ints(&[1, 0, 0, 0, 0, 1])).unwrap()
    }

    #[test]
    fn constant_heights_trivial() {
        let base = hypersimplex(2, 4).unwrap();
        let s = regular_subdivision(&base, &HeightFunction::constant(6)).unwrap();
        assert_eq!(s.cells(), &[vec![0, 1, 2, 3, 4, 5]]);
        // affine heights are also trivial
        let s =
            regular_subdivision(&base, &HeightFunction::from_ints(&[2, 1, 1, 1, 1, 0])).unwrap();
        assert_eq!(s.cells().len(), 1);
    }

    #[test]
    fn split_cells() {
        let s = split_2_4();
        let subsets = s.cell_subsets().unwrap();
        let expected: Vec<Vec<Vec<usize>>> = vec![
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]],
        ];
        assert_eq!(subsets, expected);
        assert_eq!(is_matroid_decomposition(&s), Ok(true));
    }

    #[test]
    fn generic_heights_triangulate() {
        let base = hypersimplex(2, 4).unwrap();
        let s =
            regular_subdivision(&base, &HeightFunction::from_ints(&[0, 3, 1, 7, 2, 6])).unwrap();
        assert!(s.cells().iter().all(|c| c.len() == 4));
        assert!(validate(&s).passed());
        assert_eq!(is_matroid_decomposition(&s), Ok(false));
    }

    #[test]
    fn labels_on_trivial() {
        let s = Subdivision::trivial_hypersimplex(2, 4).unwrap();
        let c = s.complex().unwrap();
        let poset = c.poset();
        let top = poset.index_of(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(c.label(top), BoundaryLabel::Interior);
        // facet x_1 = 1 is {12, 13, 14}
        let f = poset.index_of(&[0, 1, 2]).unwrap();
        assert_eq!(c.label(f), BoundaryLabel::UpperBoundary);
        let v = poset.index_of(&[0]).unwrap();
        assert_eq!(c.label(v), BoundaryLabel::LowerBoundary);
        assert!(c.on_boundary(f) && !c.on_boundary(top));
    }

    #[test]
    fn json_round_trip() {
        let s = split_2_4();
        let j = SubdivisionJson::from_subdivision(&s).unwrap();
        assert_eq!(j.cells[0][0], vec![1, 2]);
        assert_eq!(j.to_subdivision().unwrap(), s);
    }

    #[test]
    fn keyed_heights() {
        let mut map = BTreeMap::new();
        for s in k_subsets(4, 2) {
            map.insert(subset_key(&s), Rational::from(s[0] as i64));
        }
        let h = HeightFunction::from_keyed(2, 4, &map).unwrap();
        assert_eq!(h.to_keyed(2, 4), map);
        map.remove("1,2");
        assert!(HeightFunction::from_keyed(2, 4, &map).is_err());
    }
}
