//! Span, exact volume and common-face checks for a list of cells.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::Subdivision;
use crate::exact::{Rational, RationalMatrix};
use crate::polytope::{extreme_rays, to_rational, AffineFrame, FacePoset, HRep, LatticePolytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub span_ok: bool,
    pub volume_ok: bool,
    pub common_face_ok: bool,
    /// Normalised volumes in a fixed frame of the base.
    pub base_volume: Rational,
    pub cell_volume_sum: Rational,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.span_ok && self.volume_ok && self.common_face_ok
    }
}

/// Checks that every cell is full-dimensional, that cell volumes add up to
/// the base volume, and that any two cells meet in a common face.
pub fn validate(s: &Subdivision) -> ValidationReport {
    let base = s.base();
    let rational: Vec<Vec<Rational>> = base.vertices().iter().map(|v| to_rational(v)).collect();
    let frame = AffineFrame::from_points(&rational);
    let d = frame.dim();
    let coords: Vec<Vec<Rational>> = rational
        .iter()
        .map(|v| frame.coords(v).expect("vertex lies in its own span"))
        .collect();
    let mut failures = Vec::new();

    let mut span_ok = true;
    for (k, cell) in s.cells().iter().enumerate() {
        let pts: Vec<Vec<Rational>> = cell.iter().map(|&v| rational[v].clone()).collect();
        let dim = crate::polytope::affine_dim(&pts);
        if dim != d {
            span_ok = false;
            failures.push(format!("cell {k} has dimension {dim}, base has {d}"));
        }
    }

    let base_volume = match FacePoset::of_polytope(base) {
        Ok(p) => poset_volume(&p, p.cells()[0], &coords),
        Err(e) => {
            failures.push(format!("base face poset: {e}"));
            Rational::zero()
        }
    };
    let cell_volume_sum = if span_ok {
        match s.complex() {
            Ok(c) => {
                let poset = c.poset();
                s.cells()
                    .iter()
                    .map(|cell| {
                        poset_volume(
                            poset,
                            poset.index_of(cell).expect("cell is a face"),
                            &coords,
                        )
                    })
                    .sum()
            }
            Err(e) => {
                failures.push(format!("cell complex: {e}"));
                Rational::zero()
            }
        }
    } else {
        Rational::zero()
    };
    let volume_ok = span_ok && base_volume == cell_volume_sum;
    if span_ok && !volume_ok {
        failures.push(format!(
            "cell volumes sum to {cell_volume_sum}, base volume is {base_volume}"
        ));
    }

    let common_face_ok = if span_ok {
        let problems = common_face_failures(s, base, &frame);
        let ok = problems.is_empty();
        failures.extend(problems);
        ok
    } else {
        false
    };

    ValidationReport {
        span_ok,
        volume_ok,
        common_face_ok,
        base_volume,
        cell_volume_sum,
        failures,
    }
}

/// Normalised volume of a face via its pulling triangulation from the
/// smallest vertex.
fn poset_volume(poset: &FacePoset, face: usize, coords: &[Vec<Rational>]) -> Rational {
    let mut memo = HashMap::new();
    pulling_triangulation(poset, face, &mut memo)
        .iter()
        .map(|simplex| {
            let o = &coords[simplex[0]];
            let rows: Vec<Vec<Rational>> = simplex[1..]
                .iter()
                .map(|&v| coords[v].iter().zip(o).map(|(a, b)| a - b).collect())
                .collect();
            RationalMatrix::from_rows(rows)
                .and_then(|m| m.determinant())
                .map(|det| det.abs())
                .unwrap_or_else(|_| Rational::zero())
        })
        .sum()
}

fn pulling_triangulation(
    poset: &FacePoset,
    face: usize,
    memo: &mut HashMap<usize, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(&face) {
        return t.clone();
    }
    let f = poset.face(face);
    let out = if f.dim == 0 {
        vec![f.vertices.clone()]
    } else {
        let apex = f.vertices[0];
        let facets: Vec<usize> = poset.facets_of(face).collect();
        let mut out = Vec::new();
        for g in facets {
            if poset.face(g).vertices.contains(&apex) {
                continue;
            }
            for simplex in pulling_triangulation(poset, g, memo) {
                let mut s = vec![apex];
                s.extend(simplex);
                out.push(s);
            }
        }
        out
    };
    memo.insert(face, out.clone());
    out
}

fn common_face_failures(
    s: &Subdivision,
    base: &LatticePolytope,
    frame: &AffineFrame,
) -> Vec<String> {
    let verts = base.vertices();
    let hreps: Vec<Option<HRep>> = s
        .cells()
        .iter()
        .map(|cell| {
            let pts: Vec<Vec<i64>> = cell.iter().map(|&v| verts[v].clone()).collect();
            HRep::in_frame(&pts, frame.clone()).ok()
        })
        .collect();
    let face_sets: Vec<BTreeSet<Vec<usize>>> = match s.complex() {
        Ok(c) => s
            .cells()
            .iter()
            .map(|cell| descendants(c.poset(), c.poset().index_of(cell).expect("cell is a face")))
            .collect(),
        Err(e) => return vec![format!("cell complex: {e}")],
    };
    let mut failures = Vec::new();
    let cells = s.cells();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let shared = crate::polytope::intersect(&cells[i], &cells[j]);
            if !shared.is_empty()
                && !(face_sets[i].contains(&shared) && face_sets[j].contains(&shared))
            {
                failures.push(format!(
                    "cells {i} and {j} share {shared:?}, not a face of both"
                ));
                continue;
            }
            let (Some(h1), Some(h2)) = (&hreps[i], &hreps[j]) else {
                failures.push(format!("cells {i} and {j}: facet enumeration failed"));
                continue;
            };
            if !intersection_is_face(h1, h2, &cells[i], &shared) {
                failures.push(format!(
                    "hulls of cells {i} and {j} overlap beyond their shared vertices {shared:?}"
                ));
            }
        }
    }
    failures
}

fn descendants(poset: &FacePoset, top: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut stack = vec![top];
    while let Some(f) = stack.pop() {
        if out.insert(poset.face(f).vertices.clone()) {
            stack.extend(poset.facets_of(f));
        }
    }
    out
}

/// Every vertex of `conv(C1) ∩ conv(C2)` must lie on each facet of `C1`
/// that contains the shared vertex set (and there are none if it is empty).
fn intersection_is_face(h1: &HRep, h2: &HRep, cell1: &[usize], shared: &[usize]) -> bool {
    let dim = h1.dim() + 1;
    let mut rows: Vec<Vec<BigInt>> = h1.inequalities().to_vec();
    rows.extend(h2.inequalities().iter().cloned());
    let mut t = vec![BigInt::zero(); dim];
    t[0] = BigInt::from(1);
    rows.push(t);
    let Ok(rays) = extreme_rays(&rows, dim) else {
        return false;
    };
    let local: Vec<usize> = shared
        .iter()
        .map(|v| {
            cell1
                .binary_search(v)
                .expect("shared vertex lies in the cell")
        })
        .collect();
    let containing: Vec<usize> = (0..h1.facets().len())
        .filter(|&k| {
            local
                .iter()
                .all(|v| h1.facets()[k].binary_search(v).is_ok())
        })
        .collect();
    rays.iter().all(|ray| {
        if !ray.dir[0].is_positive() {
            // bounded cells have no recession directions
            return false;
        }
        if shared.is_empty() {
            return false;
        }
        let scale = Rational::from(ray.dir[0].clone());
        let x: Vec<Rational> = ray.dir[1..]
            .iter()
            .map(|c| Rational::from(c.clone()) / &scale)
            .collect();
        containing.iter().all(|&k| h1.slack(k, &x).is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::split_2_4;
    use super::*;
    use crate::polytope::hypersimplex;

    #[test]
    fn split_passes() {
        let r = validate(&split_2_4());
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.base_volume, Rational::from(4));
    }

    #[test]
    fn double_cover_fails_volume() {
        let base = hypersimplex(2, 4).unwrap();
        let all: Vec<usize> = (0..6).collect();
        let s = Subdivision::new(base, vec![all.clone(), all]).unwrap();
        // identical cells collapse only if deduplicated; they are kept
        let r = validate(&s);
        assert!(!r.volume_ok);
    }

    #[test]
    fn non_face_intersection_fails() {
        // {12,13,14,23,24} and {12,13,14,23,34}
        let s = Subdivision::from_subsets(
            2,
            4,
            &[
                vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
                vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![2, 3]],
            ],
        )
        .unwrap();
        let r = validate(&s);
        assert!(!r.common_face_ok);
    }

    #[test]
    fn missing_cell_fails_volume() {
        let s = split_2_4().without_cell(0).unwrap();
        let r = validate(&s);
        assert!(r.span_ok && r.common_face_ok && !r.volume_ok);
    }
}
