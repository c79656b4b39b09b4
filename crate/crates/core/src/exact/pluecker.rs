use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use super::subsets::{binomial, k_subsets, sort_with_sign, subset_rank};
use crate::error::{Error, Result};

/// Plücker coordinates of an r-plane in k^n, indexed by lexicographically
/// ordered r-subsets of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPluecker")]
pub struct PlueckerVector {
    r: usize,
    n: usize,
    coords: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawPluecker {
    r: usize,
    n: usize,
    coords: Vec<Rational>,
}

impl TryFrom<RawPluecker> for PlueckerVector {
    type Error = Error;
    fn try_from(raw: RawPluecker) -> Result<Self> {
        PlueckerVector::new(raw.r, raw.n, raw.coords)
    }
}

impl PlueckerVector {
    pub fn new(r: usize, n: usize, coords: Vec<Rational>) -> Result<Self> {
        if r > n {
            return Err(Error::BadParams(format!("r = {r} exceeds n = {n}")));
        }
        if coords.len() != binomial(n, r) {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates, expected C({n},{r}) = {}",
                coords.len(),
                binomial(n, r)
            )));
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::BadParams("all Plücker coordinates vanish".into()));
        }
        Ok(PlueckerVector { r, n, coords })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Coordinate at a sorted r-subset.
    pub fn get(&self, subset: &[usize]) -> &Rational {
        &self.coords[subset_rank(self.n, subset)]
    }

    /// Coordinate at an arbitrary index sequence: alternating in the order,
    /// zero when an index repeats.
    pub fn signed(&self, indices: &[usize]) -> Rational {
        match sort_with_sign(indices) {
            None => Rational::zero(),
            Some((sorted, sign)) => {
                let v = self.get(&sorted).clone();
                if sign < 0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Scales so that the first nonzero coordinate equals one.
    pub fn normalized(&self) -> Self {
        let lead = self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero by construction")
            .clone();
        PlueckerVector {
            r: self.r,
            n: self.n,
            coords: self.coords.iter().map(|c| c / &lead).collect(),
        }
    }

    /// Equality as points of projective space.
    pub fn projectively_eq(&self, other: &PlueckerVector) -> bool {
        self.r == other.r && self.n == other.n && self.normalized() == other.normalized()
    }

    /// Support: the r-subsets with nonzero coordinate.
    pub fn support(&self) -> Vec<Vec<usize>> {
        k_subsets(self.n, self.r)
            .into_iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, _)| s)
            .collect()
    }
}

/// Plücker vector of the row space of a rank-r matrix with r rows.
pub fn maximal_minors(m: &RationalMatrix) -> Result<PlueckerVector> {
    let (r, n) = (m.rows(), m.cols());
    let rank = m.rank();
    if rank < r {
        return Err(Error::RankDeficient { rank, expected: r });
    }
    let rows: Vec<usize> = (0..r).collect();
    let coords = k_subsets(n, r)
        .iter()
        .map(|cols| m.minor(&rows, cols))
        .collect::<Result<Vec<_>>>()?;
    PlueckerVector::new(r, n, coords)
}

/// Checks the quadratic Grassmann–Plücker relations
/// `Σ_k (-1)^k p(I ∪ j_k) p(J \ j_k) = 0` for every (r-1)-subset `I` and
/// (r+1)-subset `J`. These include all three-term relations.
pub fn pluecker_relations_ok(p: &PlueckerVector) -> bool {
    let (r, n) = (p.r(), p.n());
    if r == 0 || r >= n {
        return true;
    }
    let lows = k_subsets(n, r - 1);
    let highs = k_subsets(n, r + 1);
    for i_set in &lows {
        for j_set in &highs {
            let mut total = Rational::zero();
            for (k, &j) in j_set.iter().enumerate() {
                let mut left = i_set.clone();
                left.push(j);
                let a = p.signed(&left);
                if a.is_zero() {
                    continue;
                }
                let right: Vec<usize> = j_set.iter().copied().filter(|&x| x != j).collect();
                let b = p.signed(&right);
                let term = a * b;
                if k % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            if !total.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Unit Plücker vector of the coordinate plane spanned by `subset`.
pub fn coordinate_plane(n: usize, subset: &[usize]) -> Result<PlueckerVector> {
    let r = subset.len();
    let mut coords = vec![Rational::zero(); binomial(n, r)];
    coords[subset_rank(n, subset)] = Rational::one();
    PlueckerVector::new(r, n, coords)
}
