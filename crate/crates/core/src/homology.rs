//! Chain complexes over Q, relative cellular complexes of face posets, and
//! the cohomology dimensions of O_S, O_B and ω_S(B) for matroid
//! decompositions of Δ(r, n).

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::subsets::{binomial, k_subsets, sort_with_sign, subset_rank};
use crate::exact::{Rational, RationalMatrix};
use crate::polytope::FacePoset;
use crate::stanley::{check_cocycle_at, GluingData, WeightPoint};
use crate::subdivision::{is_matroid_decomposition, BoundaryLabel, Subdivision};

/// Graded vector spaces `C_0, …, C_m` with boundaries `∂_k : C_k → C_{k−1}`.
/// `boundaries[k]` is a `dims[k−1] × dims[k]` matrix; `boundaries[0]` has no rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<RationalMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<RationalMatrix>) -> Result<Self> {
        if dims.len() != boundaries.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees but {} boundary maps",
                dims.len(),
                boundaries.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            let rows = if k == 0 { 0 } else { dims[k - 1] };
            if b.rows() != rows || b.cols() != dims[k] {
                return Err(Error::DimensionMismatch(format!(
                    "boundary {k} is {}x{}, expected {rows}x{}",
                    b.rows(),
                    b.cols(),
                    dims[k]
                )));
            }
        }
        for k in 1..boundaries.len().saturating_sub(1) {
            if !boundaries[k].mul(&boundaries[k + 1])?.is_zero() {
                return Err(Error::DimensionMismatch(format!("∂_{k} ∘ ∂_{} ≠ 0", k + 1)));
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, k: usize) -> &RationalMatrix {
        &self.boundaries[k]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// `dim H_k = dims[k] − rank ∂_k − rank ∂_{k+1}`.
pub fn homology_dims(c: &ChainComplex) -> Vec<usize> {
    let ranks: Vec<usize> = c.boundaries.iter().map(rank_of).collect();
    (0..c.dims.len())
        .map(|k| c.dims[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
        .collect()
}

fn rank_of(m: &RationalMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        m.rank()
    }
}

/// Cellular chains of the faces of `poset` not in `l`, with incidence numbers.
pub fn relative_complex(poset: &FacePoset, l: &[bool]) -> Result<ChainComplex> {
    relative_subcomplex(poset, &vec![true; poset.len()], l)
}

/// Cellular chains of the pair `(K, L)` given as face masks of `poset`.
pub fn relative_subcomplex(poset: &FacePoset, k: &[bool], l: &[bool]) -> Result<ChainComplex> {
    weighted_complex(poset, k, l, |_, _| Rational::from(1))
}

fn check_closed(poset: &FacePoset, mask: &[bool], name: &str) -> Result<()> {
    for f in 0..poset.len() {
        if mask[f] {
            if let Some(g) = poset.facets_of(f).find(|&g| !mask[g]) {
                return Err(Error::NotSubcomplex(format!(
                    "{name}: face {:?} lies in it but its facet {:?} does not",
                    poset.face(f).vertices,
                    poset.face(g).vertices
                )));
            }
        }
    }
    Ok(())
}

/// Chains on `K \ L` with entries `incidence(F, G) · weight(F, G)`.
fn weighted_complex(
    poset: &FacePoset,
    k: &[bool],
    l: &[bool],
    weight: impl Fn(usize, usize) -> Rational,
) -> Result<ChainComplex> {
    if k.len() != poset.len() || l.len() != poset.len() {
        return Err(Error::DimensionMismatch("face mask length".into()));
    }
    check_closed(poset, k, "K")?;
    check_closed(poset, l, "L")?;
    if let Some(f) = (0..poset.len()).find(|&f| l[f] && !k[f]) {
        return Err(Error::NotSubcomplex(format!(
            "face {:?} is in L but not in K",
            poset.face(f).vertices
        )));
    }
    let top = poset.top_dim();
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for f in 0..poset.len() {
        if k[f] && !l[f] {
            by_dim[poset.face(f).dim].push(f);
        }
    }
    chains_from_faces(poset, &by_dim, weight)
}

fn chains_from_faces(
    poset: &FacePoset,
    by_dim: &[Vec<usize>],
    weight: impl Fn(usize, usize) -> Rational,
) -> Result<ChainComplex> {
    let position: HashMap<usize, usize> = by_dim
        .iter()
        .flat_map(|faces| faces.iter().enumerate().map(|(p, &f)| (f, p)))
        .collect();
    let dims: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    let mut boundaries = vec![RationalMatrix::zeros(0, dims[0])];
    for d in 1..by_dim.len() {
        let mut m = RationalMatrix::zeros(dims[d - 1], dims[d]);
        for (col, &f) in by_dim[d].iter().enumerate() {
            for &(g, sign) in poset.signed_facets_of(f) {
                if let Some(&row) = position.get(&g) {
                    if poset.face(g).dim == d - 1 && by_dim[d - 1].get(row) == Some(&g) {
                        m.set(row, col, Rational::from(sign) * weight(f, g));
                    }
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(dims, boundaries)
}

/// Dimensions of the three cohomology groups and their expected values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub r: usize,
    pub n: usize,
    pub h_os: Vec<usize>,
    pub h_ob: Vec<usize>,
    pub h_omega: Vec<usize>,
    pub expected_os: Vec<usize>,
    /// Only stated for `r ≥ 3`.
    pub expected_ob: Option<Vec<usize>>,
    pub expected_omega: Vec<usize>,
    pub passed: bool,
}

fn require_matroidal(s: &Subdivision) -> Result<(usize, usize)> {
    let (r, n) = s.params()?;
    if !is_matroid_decomposition(s)? {
        return Err(Error::NotMatroidal(
            "some cell is not a matroid polytope".into(),
        ));
    }
    Ok((r, n))
}

/// `h^i(O_S) = dim H_{n−1−i}(K, L)` for `K` the glued complex and `L` its
/// part in ∂Δ(r, n), for `i = 0, …, r−1`.
pub fn cohomology_os(s: &Subdivision) -> Result<Vec<usize>> {
    let (r, n) = require_matroidal(s)?;
    let complex = s.complex()?;
    let poset = complex.poset();
    let l: Vec<bool> = (0..poset.len()).map(|i| complex.on_boundary(i)).collect();
    let h = homology_dims(&relative_complex(poset, &l)?);
    Ok((0..r).map(|i| h[n - 1 - i]).collect())
}

/// `h^i(O_B) = dim H_{n−2−i}(K, L)` for `K` the part of the glued complex
/// in ∂Δ(r, n) and `L` its part in `∪ (x_i = 0)`, for `i = 0, …, r−2`.
pub fn cohomology_ob(s: &Subdivision) -> Result<Vec<usize>> {
    let (r, n) = require_matroidal(s)?;
    let complex = s.complex()?;
    let poset = complex.poset();
    let k: Vec<bool> = (0..poset.len()).map(|i| complex.on_boundary(i)).collect();
    let l: Vec<bool> = (0..poset.len())
        .map(|i| complex.label(i) == BoundaryLabel::LowerBoundary)
        .collect();
    let h = homology_dims(&relative_subcomplex(poset, &k, &l)?);
    Ok((0..=r - 2).map(|i| h[n - 2 - i]).collect())
}

/// `h^i(ω_S(B)) = h^{r−1−i}(O_S(−B))`, with `h^i(O_S(−B))` read off the
/// sequence `0 → O_S(−B) → O_S → O_B → 0`.
pub fn cohomology_omega(s: &Subdivision) -> Result<Vec<usize>> {
    let h_ob = cohomology_ob(s)?;
    let h_os = cohomology_os(s)?;
    Ok(omega_from(&h_os, &h_ob))
}

fn omega_from(h_os: &[usize], h_ob: &[usize]) -> Vec<usize> {
    let r = h_os.len();
    // with h^0(O_S) = 1, h^{>0}(O_S) = 0 and B nonempty
    let minus_b: Vec<usize> = (0..r)
        .map(|i| match i {
            0 => 0,
            1 => h_ob[0].saturating_sub(1),
            _ => h_ob[i - 1],
        })
        .collect();
    (0..r).map(|i| minus_b[r - 1 - i]).collect()
}

/// All three computations with their expected values.
pub fn cohomology_report(s: &Subdivision) -> Result<CohomologyReport> {
    let (r, n) = require_matroidal(s)?;
    let h_os = cohomology_os(s)?;
    let h_ob = cohomology_ob(s)?;
    let h_omega = omega_from(&h_os, &h_ob);
    let top = binomial(n - 1, r - 1);
    let mut expected_os = vec![0; r];
    expected_os[0] = 1;
    let expected_ob = (r >= 3).then(|| {
        let mut v = vec![0; r - 1];
        v[0] = 1;
        v[r - 2] = top;
        v
    });
    let mut expected_omega = vec![0; r];
    expected_omega[0] = top;
    let passed = h_os == expected_os
        && h_omega == expected_omega
        && expected_ob.as_ref().is_none_or(|e| *e == h_ob);
    Ok(CohomologyReport {
        r,
        n,
        h_os,
        h_ob,
        h_omega,
        expected_os,
        expected_ob,
        expected_omega,
        passed,
    })
}

/// Homology of skeleton pairs of the simplex on `[n]` and the cokernel of
/// `v ↦ e ∧ v` on `∧^{r−1} k^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonReport {
    pub r: usize,
    pub n: usize,
    /// `H_*(Δ^{(n−2)}, Δ^{(n−r)})`, indexed by degree.
    pub literal: Vec<usize>,
    /// `H_*(Δ^{(n−2)}, Δ^{(n−r−1)})`, indexed by degree.
    pub shifted: Vec<usize>,
    pub wedge_cokernel: usize,
    pub expected: usize,
    /// Which convention puts `C(n−1, r−1)` in degree `n − r`.
    pub matching: Vec<String>,
}

impl SkeletonReport {
    pub fn literal_at(&self, degree: usize) -> usize {
        self.literal.get(degree).copied().unwrap_or(0)
    }

    pub fn shifted_at(&self, degree: usize) -> usize {
        self.shifted.get(degree).copied().unwrap_or(0)
    }
}

/// Relative simplicial homology of `(Δ^{(top)}, Δ^{(low)})` on `n` vertices;
/// `low = None` means the empty subcomplex.
pub fn simplex_skeleton_pair(n: usize, top: usize, low: Option<usize>) -> Result<Vec<usize>> {
    let start = low.map_or(0, |l| l + 1);
    // degree k uses the (k+1)-subsets
    let faces: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|k| {
            if k >= start {
                k_subsets(n, k + 1)
            } else {
                Vec::new()
            }
        })
        .collect();
    let dims: Vec<usize> = faces.iter().map(Vec::len).collect();
    let mut boundaries = vec![RationalMatrix::zeros(0, dims[0])];
    for k in 1..=top {
        let mut m = RationalMatrix::zeros(dims[k - 1], dims[k]);
        if dims[k - 1] > 0 {
            for (col, s) in faces[k].iter().enumerate() {
                for j in 0..s.len() {
                    let mut t = s.clone();
                    t.remove(j);
                    let row = subset_rank(n, &t);
                    m.set(row, col, Rational::from(if j % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        boundaries.push(m);
    }
    Ok(homology_dims(&ChainComplex::new(dims, boundaries)?))
}

/// Cokernel dimension of `e ∧ − : ∧^{p−1} k^n → ∧^p k^n`.
pub fn wedge_cokernel(n: usize, p: usize) -> usize {
    if p == 0 {
        return 1;
    }
    let sources = k_subsets(n, p - 1);
    let targets = k_subsets(n, p);
    let mut m = RationalMatrix::zeros(targets.len(), sources.len());
    for (col, s) in sources.iter().enumerate() {
        for j in (0..n).filter(|j| !s.contains(j)) {
            let mut seq = vec![j];
            seq.extend(s);
            let (sorted, sign) = sort_with_sign(&seq).expect("distinct indices");
            m.set(subset_rank(n, &sorted), col, Rational::from(sign));
        }
    }
    targets.len() - rank_of(&m)
}

/// Both readings of the skeleton pair, with the wedge-map cokernel.
pub fn skeleton_pair_oracle(r: usize, n: usize) -> Result<SkeletonReport> {
    if r < 2 || r + 1 > n {
        return Err(Error::BadParams(format!(
            "need 2 <= r <= n-1, got r = {r}, n = {n}"
        )));
    }
    let top = n - 2;
    let literal = simplex_skeleton_pair(n, top, Some(n - r))?;
    let shifted = simplex_skeleton_pair(n, top, (n - r).checked_sub(1))?;
    let expected = binomial(n - 1, r - 1);
    let degree = n - r;
    let mut matching = Vec::new();
    if literal.get(degree) == Some(&expected) {
        matching.push("literal".to_string());
    }
    if shifted.get(degree) == Some(&expected) {
        matching.push("shifted".to_string());
    }
    Ok(SkeletonReport {
        r,
        n,
        literal,
        shifted,
        wedge_cokernel: wedge_cokernel(n, r - 1),
        expected,
        matching,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GradedExactness {
    /// The zero weight is excluded.
    Skipped,
    Checked {
        a: Vec<i64>,
        /// Homology of the weight-`a` complex, indexed by face dimension.
        homology: Vec<usize>,
        exact: bool,
    },
}

impl GradedExactness {
    pub fn passed(&self) -> bool {
        matches!(
            self,
            GradedExactness::Skipped | GradedExactness::Checked { exact: true, .. }
        )
    }
}

/// The weight-`a` complex on interior faces containing `a`, with entries
/// `incidence · a(t_{FG})`, must have homology `k` in the top dimension only.
pub fn graded_exactness_check(
    s: &Subdivision,
    t: &GluingData,
    a: &WeightPoint,
) -> Result<GradedExactness> {
    if a.is_zero() {
        return Ok(GradedExactness::Skipped);
    }
    check_cocycle_at(s, t, a)?;
    let complex = s.complex()?;
    let poset = complex.poset();
    let top = poset.top_dim();
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for f in complex.faces_containing(&a.a, a.level) {
        if !complex.on_boundary(f) {
            by_dim[poset.face(f).dim].push(f);
        }
    }
    let c = chains_from_faces(poset, &by_dim, |f, g| {
        t.character(&poset.face(f).vertices, &poset.face(g).vertices, &a.a)
    })?;
    let homology = homology_dims(&c);
    let exact = homology
        .iter()
        .enumerate()
        .all(|(k, &h)| h == usize::from(k == top));
    Ok(GradedExactness::Checked {
        a: a.a.clone(),
        homology,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{face_poset, LatticePolytope};
    use crate::presets::{split_2_4, split_2_5};

    #[test]
    fn segment_relative_to_endpoints() {
        let p = LatticePolytope::new(1, vec![vec![0], vec![1]]).unwrap();
        let poset = face_poset(&p).unwrap();
        let l: Vec<bool> = poset.faces().iter().map(|f| f.dim == 0).collect();
        let c = relative_complex(&poset, &l).unwrap();
        assert_eq!(homology_dims(&c), vec![0, 1]);
    }

    #[test]
    fn triangle_boundary_is_circle() {
        let p = LatticePolytope::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let poset = face_poset(&p).unwrap();
        let k: Vec<bool> = poset.faces().iter().map(|f| f.dim < 2).collect();
        let c = relative_subcomplex(&poset, &k, &vec![false; poset.len()]).unwrap();
        assert_eq!(homology_dims(&c), vec![1, 1, 0]);
    }

    #[test]
    fn not_subcomplex_rejected() {
        let p = LatticePolytope::new(1, vec![vec![0], vec![1]]).unwrap();
        let poset = face_poset(&p).unwrap();
        let l: Vec<bool> = poset.faces().iter().map(|f| f.dim == 1).collect();
        assert!(matches!(
            relative_complex(&poset, &l),
            Err(Error::NotSubcomplex(_))
        ));
    }

    #[test]
    fn bad_shapes_and_nonzero_square() {
        let d1 = RationalMatrix::from_int_rows(&[[1]]).unwrap();
        let d2 = RationalMatrix::from_int_rows(&[[1]]).unwrap();
        let c = ChainComplex::new(vec![1, 1, 1], vec![RationalMatrix::zeros(0, 1), d1, d2]);
        assert!(c.is_err());
    }

    #[test]
    fn trivial_cohomology() {
        let s = Subdivision::trivial_hypersimplex(2, 4).unwrap();
        assert_eq!(cohomology_os(&s).unwrap(), vec![1, 0]);
        assert_eq!(cohomology_ob(&s).unwrap(), vec![4]);
        assert_eq!(cohomology_omega(&s).unwrap(), vec![3, 0]);
        let s = Subdivision::trivial_hypersimplex(3, 5).unwrap();
        assert_eq!(cohomology_ob(&s).unwrap(), vec![1, 6]);
        assert!(cohomology_report(&s).unwrap().passed);
    }

    #[test]
    fn split_cohomology() {
        assert_eq!(cohomology_os(&split_2_4().unwrap()).unwrap(), vec![1, 0]);
        assert_eq!(cohomology_omega(&split_2_5().unwrap()).unwrap(), vec![4, 0]);
    }

    #[test]
    fn skeleton_oracle() {
        let rep = skeleton_pair_oracle(3, 6).unwrap();
        assert_eq!(rep.shifted_at(3), 10);
        assert_eq!(rep.wedge_cokernel, 10);
        assert_eq!(rep.matching, vec!["shifted".to_string()]);
        let rep = skeleton_pair_oracle(2, 4).unwrap();
        assert_eq!(rep.wedge_cokernel, 3);
        assert_eq!(rep.shifted_at(2), 4);
    }

    #[test]
    fn exactness_on_split() {
        let s = split_2_4().unwrap();
        let t = GluingData::identity(4);
        let a = WeightPoint::new(2, vec![1, 1, 1, 1]).unwrap();
        assert!(graded_exactness_check(&s, &t, &a).unwrap().passed());
        assert_eq!(
            graded_exactness_check(&s, &t, &WeightPoint::zero(4)).unwrap(),
            GradedExactness::Skipped
        );
    }
}
