//! Face posets with oriented cells and signed incidences.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;
use serde::Serialize;

use super::frame::{to_rational, AffineFrame};
use super::{HRep, LatticePolytope};
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};

/// A nonempty face, identified by the sorted indices of the points on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// All nonempty faces of a collection of cells, glued along equal vertex
/// sets, with an orientation of every face and the resulting incidence
/// numbers.
#[derive(Clone, Debug)]
pub struct FacePoset {
    points: Vec<Vec<i64>>,
    top_dim: usize,
    faces: Vec<Face>,
    index: HashMap<Vec<usize>, usize>,
    facets: Vec<Vec<(usize, i32)>>,
    cofacets: Vec<Vec<usize>>,
    orientations: Vec<Vec<Vec<Rational>>>,
    cells: Vec<usize>,
}

impl FacePoset {
    /// The face poset of a single polytope.
    pub fn of_polytope(p: &LatticePolytope) -> Result<Self> {
        let all: Vec<usize> = (0..p.num_vertices()).collect();
        Self::from_cells(p.vertices(), &[all])
    }

    /// The union of the face posets of the given cells (subsets of
    /// `points`). Top-dimensional faces are oriented by one fixed frame of
    /// the whole point set, so that orientations of cells agree.
    pub fn from_cells(points: &[Vec<i64>], cells: &[Vec<usize>]) -> Result<Self> {
        let rational: Vec<Vec<Rational>> = points.iter().map(|v| to_rational(v)).collect();
        let base = AffineFrame::from_points(&rational);
        let top_dim = base.dim();

        // vertex set -> (dim, facet vertex sets)
        let mut found: BTreeMap<Vec<usize>, (usize, BTreeSet<Vec<usize>>)> = BTreeMap::new();
        let mut cell_sets = Vec::new();
        for cell in cells {
            let mut cell = cell.clone();
            cell.sort_unstable();
            cell.dedup();
            if let Some(&bad) = cell.iter().find(|&&i| i >= points.len()) {
                return Err(Error::IndexOutOfRange(format!(
                    "vertex {bad} of {}",
                    points.len()
                )));
            }
            let pts: Vec<Vec<i64>> = cell.iter().map(|&i| points[i].clone()).collect();
            let h = HRep::of_points(&pts)?;
            let cell_facets: Vec<Vec<usize>> = h
                .facets()
                .iter()
                .map(|f| f.iter().map(|&k| cell[k]).collect())
                .collect();
            close_faces(&cell, h.dim(), &cell_facets, &mut found);
            cell_sets.push(cell);
        }

        let mut faces: Vec<Face> = found
            .iter()
            .map(|(v, (d, _))| Face {
                vertices: v.clone(),
                dim: *d,
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        let index: HashMap<Vec<usize>, usize> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();

        let orientations: Vec<Vec<Vec<Rational>>> = faces
            .iter()
            .map(|f| {
                if f.dim == top_dim {
                    base.basis().to_vec()
                } else {
                    let pts: Vec<Vec<Rational>> =
                        f.vertices.iter().map(|&i| rational[i].clone()).collect();
                    AffineFrame::from_points(&pts).basis().to_vec()
                }
            })
            .collect();

        let mut poset = FacePoset {
            points: points.to_vec(),
            top_dim,
            faces,
            index,
            facets: Vec::new(),
            cofacets: Vec::new(),
            orientations,
            cells: Vec::new(),
        };
        let n = poset.faces.len();
        let mut facets = vec![Vec::new(); n];
        let mut cofacets = vec![Vec::new(); n];
        for (i, face) in poset.faces.iter().enumerate() {
            for g in &found[&face.vertices].1 {
                let j = poset.index[g];
                let sign = poset.compute_incidence(i, j)?;
                facets[i].push((j, sign));
                cofacets[j].push(i);
            }
        }
        poset.facets = facets;
        poset.cofacets = cofacets;
        let mut cells: Vec<usize> = cell_sets.iter().map(|c| poset.index[c]).collect();
        cells.sort_unstable();
        cells.dedup();
        poset.cells = cells;
        Ok(poset)
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    /// Dimension of the affine span of all points.
    pub fn top_dim(&self) -> usize {
        self.top_dim
    }

    /// Faces sorted by dimension, then by vertex set.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// Indices of the input cells.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn facets_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.facets[i].iter().map(|&(j, _)| j)
    }

    /// Facets of face `i` with their incidence numbers.
    pub fn signed_facets_of(&self, i: usize) -> &[(usize, i32)] {
        &self.facets[i]
    }

    /// Faces having `i` as a facet.
    pub fn cofacets_of(&self, i: usize) -> &[usize] {
        &self.cofacets[i]
    }

    pub fn orientation(&self, i: usize) -> &[Vec<Rational>] {
        &self.orientations[i]
    }

    pub fn faces_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&i| self.faces[i].dim == k)
            .collect()
    }

    /// Number of faces in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.top_dim + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    /// Incidence number of facet `g` in face `f`.
    pub fn incidence(&self, f: usize, g: usize) -> Result<i32> {
        self.facets[f]
            .iter()
            .find(|&&(j, _)| j == g)
            .map(|&(_, s)| s)
            .ok_or(Error::NotFacet { face: g, of: f })
    }

    /// True iff `Σ_G [F:G][G:H] = 0` for every face `F` and every face `H`
    /// two dimensions below it.
    pub fn boundary_squares_to_zero(&self) -> bool {
        self.faces.iter().enumerate().all(|(f, _)| {
            let mut totals: HashMap<usize, i32> = HashMap::new();
            for &(g, s) in &self.facets[f] {
                for &(h, t) in &self.facets[g] {
                    *totals.entry(h).or_default() += s * t;
                }
            }
            totals.values().all(|&v| v == 0)
        })
    }

    /// Euler characteristic of the faces other than the cells.
    pub fn boundary_euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.cells.contains(i))
            .map(|(_, f)| if f.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Sign of `[w, g_1, …, g_{k−1}]` in the oriented basis of `f`, where
    /// `w` points from `f` out through `g`.
    fn compute_incidence(&self, f: usize, g: usize) -> Result<i32> {
        let (face_f, face_g) = (&self.faces[f], &self.faces[g]);
        let inner = face_f
            .vertices
            .iter()
            .find(|v| face_g.vertices.binary_search(v).is_err())
            .ok_or(Error::NotFacet { face: g, of: f })?;
        let p = &self.points[face_g.vertices[0]];
        let q = &self.points[*inner];
        let w: Vec<Rational> = p
            .iter()
            .zip(q)
            .map(|(a, b)| Rational::from(a - b))
            .collect();
        let basis = &self.orientations[f];
        let frame = AffineFrame::with_basis(vec![Rational::zero(); w.len()], basis.clone());
        let mut rows = Vec::with_capacity(basis.len());
        for v in std::iter::once(&w).chain(self.orientations[g].iter()) {
            rows.push(
                frame
                    .linear_coords(v)
                    .ok_or(Error::NotFacet { face: g, of: f })?,
            );
        }
        let det = RationalMatrix::from_rows(rows)?.determinant()?;
        match det.signum() {
            0 => Err(Error::NotFacet { face: g, of: f }),
            s => Ok(s),
        }
    }
}

/// Adds every nonempty face of a cell to `found`. The facets of a face `F`
/// are the maximal proper nonempty sets `F ∩ Φ` over facets `Φ` of the cell.
fn close_faces(
    cell: &[usize],
    dim: usize,
    cell_facets: &[Vec<usize>],
    found: &mut BTreeMap<Vec<usize>, (usize, BTreeSet<Vec<usize>>)>,
) {
    let mut stack = vec![(cell.to_vec(), dim)];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    while let Some((face, d)) = stack.pop() {
        if !seen.insert(face.clone()) {
            continue;
        }
        let facets: BTreeSet<Vec<usize>> = if d == 0 {
            BTreeSet::new()
        } else {
            let candidates: BTreeSet<Vec<usize>> = cell_facets
                .iter()
                .map(|phi| intersect(&face, phi))
                .filter(|s| !s.is_empty() && s.len() < face.len())
                .collect();
            candidates
                .iter()
                .filter(|s| {
                    !candidates
                        .iter()
                        .any(|t| t.len() > s.len() && is_subset(s, t))
                })
                .cloned()
                .collect()
        };
        for g in &facets {
            stack.push((g.clone(), d - 1));
        }
        let entry = found.entry(face).or_insert_with(|| (d, BTreeSet::new()));
        entry.1.extend(facets);
    }
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// The face poset of a polytope.
pub fn face_poset(p: &LatticePolytope) -> Result<FacePoset> {
    FacePoset::of_polytope(p)
}

/// Incidence number of facet `g` in face `f`, by index.
pub fn incidence(poset: &FacePoset, f: usize, g: usize) -> Result<i32> {
    poset.incidence(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::hypersimplex;

    #[test]
    fn triangle() {
        let p = hypersimplex(1, 3).unwrap();
        let poset = face_poset(&p).unwrap();
        assert_eq!(poset.f_vector(), vec![3, 3, 1]);
        assert!(poset.boundary_squares_to_zero());
        assert_eq!(poset.boundary_euler_characteristic(), 0);
    }

    #[test]
    fn octahedron() {
        let p = hypersimplex(2, 4).unwrap();
        let poset = face_poset(&p).unwrap();
        assert_eq!(poset.f_vector(), vec![6, 12, 8, 1]);
        assert_eq!(poset.len(), 27);
        assert!(poset.boundary_squares_to_zero());
        assert_eq!(poset.boundary_euler_characteristic(), 2);
    }

    #[test]
    fn segment_signs() {
        let p = LatticePolytope::new(1, vec![vec![0], vec![1]]).unwrap();
        let poset = face_poset(&p).unwrap();
        let edge = poset.index_of(&[0, 1]).unwrap();
        let v0 = poset.index_of(&[0]).unwrap();
        let v1 = poset.index_of(&[1]).unwrap();
        assert_eq!(poset.incidence(edge, v1), Ok(1));
        assert_eq!(poset.incidence(edge, v0), Ok(-1));
        assert_eq!(
            poset.incidence(v0, v1),
            Err(Error::NotFacet { face: v1, of: v0 })
        );
    }

    #[test]
    fn shared_edge_cancels() {
        // unit square cut along its diagonal
        let pts = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let poset = FacePoset::from_cells(&pts, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let diag = poset.index_of(&[1, 2]).unwrap();
        let a = poset.index_of(&[0, 1, 2]).unwrap();
        let b = poset.index_of(&[1, 2, 3]).unwrap();
        assert_eq!(
            poset.incidence(a, diag).unwrap(),
            -poset.incidence(b, diag).unwrap()
        );
        assert!(poset.boundary_squares_to_zero());
    }
}
