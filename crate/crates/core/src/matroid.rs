//! Matroids given by their bases, and matroid polytopes.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::subsets::k_subsets;
use crate::exact::RationalMatrix;
use crate::polytope::{face_poset, indicator, LatticePolytope};

/// A matroid on `0..n` of rank `r`, stored as its set of bases.
///
/// The JSON form lists bases with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatroidJson", into = "MatroidJson")]
pub struct Matroid {
    n: usize,
    r: usize,
    bases: BTreeSet<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct MatroidJson {
    n: usize,
    r: usize,
    bases: Vec<Vec<usize>>,
}

impl TryFrom<MatroidJson> for Matroid {
    type Error = Error;
    fn try_from(raw: MatroidJson) -> Result<Self> {
        let bases = raw
            .bases
            .into_iter()
            .map(|b| {
                if b.contains(&0) {
                    return Err(Error::IndexOutOfRange("matroid indices are 1-based".into()));
                }
                Ok(b.into_iter().map(|i| i - 1).collect())
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Matroid::new(raw.n, raw.r, bases)
    }
}

impl From<Matroid> for MatroidJson {
    fn from(m: Matroid) -> Self {
        MatroidJson {
            n: m.n,
            r: m.r,
            bases: m
                .bases
                .iter()
                .map(|b| b.iter().map(|i| i + 1).collect())
                .collect(),
        }
    }
}

impl Matroid {
    /// Validates sizes, ranges and the exchange axiom.
    pub fn new(n: usize, r: usize, bases: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut b in bases {
            b.sort_unstable();
            b.dedup();
            if b.len() != r {
                return Err(Error::BadParams(format!(
                    "basis {b:?} does not have {r} elements"
                )));
            }
            if let Some(&i) = b.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange(format!(
                    "element {} of a {n}-element ground set",
                    i + 1
                )));
            }
            set.insert(b);
        }
        if !exchange_holds(&set) {
            return Err(Error::BadParams("bases violate the exchange axiom".into()));
        }
        Ok(Matroid { n, r, bases: set })
    }

    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::BadParams(format!("U_{{{r},{n}}} needs r <= n")));
        }
        Self::new(n, r, k_subsets(n, r))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn bases(&self) -> &BTreeSet<Vec<usize>> {
        &self.bases
    }

    pub fn is_basis(&self, subset: &[usize]) -> bool {
        self.bases.contains(subset)
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, subset: &[usize]) -> usize {
        self.bases
            .iter()
            .map(|b| b.iter().filter(|i| subset.contains(i)).count())
            .max()
            .unwrap_or(0)
    }
}

fn exchange_holds(family: &BTreeSet<Vec<usize>>) -> bool {
    if family.is_empty() {
        return false;
    }
    for b1 in family {
        for b2 in family {
            for &x in b1.iter().filter(|x| !b2.contains(x)) {
                let ok = b2.iter().filter(|y| !b1.contains(y)).any(|&y| {
                    let mut c: Vec<usize> = b1.iter().copied().filter(|&z| z != x).collect();
                    c.push(y);
                    c.sort_unstable();
                    family.contains(&c)
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff `family` is a nonempty set of r-subsets of `0..n` satisfying the
/// exchange axiom.
pub fn is_basis_family(n: usize, r: usize, family: &[Vec<usize>]) -> bool {
    let mut set = BTreeSet::new();
    for b in family {
        let mut b = b.clone();
        b.sort_unstable();
        b.dedup();
        if b.len() != r || b.iter().any(|&i| i >= n) {
            return false;
        }
        set.insert(b);
    }
    exchange_holds(&set)
}

/// The matroid whose bases are the column sets with nonzero maximal minor.
pub fn matroid_from_matrix(m: &RationalMatrix) -> Result<Matroid> {
    let (r, n) = (m.rows(), m.cols());
    let rank = m.rank();
    if rank < r {
        return Err(Error::RankDeficient { rank, expected: r });
    }
    let rows: Vec<usize> = (0..r).collect();
    let mut bases = Vec::new();
    for cols in k_subsets(n, r) {
        if !m.minor(&rows, &cols)?.is_zero() {
            bases.push(cols);
        }
    }
    Matroid::new(n, r, bases)
}

/// True iff no split `E = E1 ⊔ E2` into nonempty parts has
/// `rank(E1) + rank(E2) = r`.
pub fn is_connected(m: &Matroid) -> bool {
    let n = m.n;
    if n <= 1 {
        return true;
    }
    // element n-1 always sits in E2, so each split is visited once
    for mask in 1u64..(1u64 << (n - 1)) {
        let e1: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let e2: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
        if m.rank_of(&e1) + m.rank_of(&e2) == m.r {
            return false;
        }
    }
    true
}

/// Convex hull of the basis indicator vectors.
pub fn polytope_of(m: &Matroid) -> LatticePolytope {
    let vertices = m.bases.iter().map(|b| indicator(m.n, b)).collect();
    LatticePolytope::new(m.n, vertices).expect("distinct bases give distinct vertices")
}

/// True iff the given vertices of Δ(r, n) span a matroid polytope.
pub fn is_matroid_subpolytope(r: usize, n: usize, vertex_subset: &[Vec<usize>]) -> bool {
    is_basis_family(n, r, vertex_subset)
}

/// Independent test via the edge characterisation: every edge of the hull
/// has direction `e_i − e_j`.
pub fn edges_are_roots(n: usize, vertex_subset: &[Vec<usize>]) -> bool {
    if vertex_subset.is_empty() {
        return false;
    }
    let mut subsets: Vec<Vec<usize>> = vertex_subset.to_vec();
    for s in &mut subsets {
        s.sort_unstable();
    }
    subsets.sort();
    subsets.dedup();
    let vertices: Vec<Vec<i64>> = subsets.iter().map(|s| indicator(n, s)).collect();
    let Ok(p) = LatticePolytope::new(n, vertices) else {
        return false;
    };
    let Ok(poset) = face_poset(&p) else {
        return false;
    };
    poset.faces_of_dim(1).into_iter().all(|e| {
        let f = poset.face(e);
        if f.vertices.len() != 2 {
            // a lattice edge through interior 0/1 points cannot occur
            return false;
        }
        let (a, b) = (&p.vertices()[f.vertices[0]], &p.vertices()[f.vertices[1]]);
        let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        diff.iter().filter(|&&d| d != 0).count() == 2 && diff.iter().sum::<i64>() == 0
    })
}
