//! The faces Γ_I = ∩_{i∈I} (x_i = 1) and the cells containing them.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{support, Subdivision};
use crate::error::{Error, Result};
use crate::exact::subsets::subset_rank;
use crate::exact::{Rational, RationalMatrix};
use crate::polytope::{extreme_rays, Face};

/// The face of Δ(r, n) with vertices `e_I + e_j` for `j ∉ I`.
pub fn gamma_face(r: usize, n: usize, i_set: &[usize]) -> Result<Face> {
    check_index_set(r, n, i_set)?;
    let mut vertices: Vec<usize> = (0..n)
        .filter(|j| !i_set.contains(j))
        .map(|j| {
            let mut s = i_set.to_vec();
            s.push(j);
            s.sort_unstable();
            subset_rank(n, &s)
        })
        .collect();
    vertices.sort_unstable();
    Ok(Face {
        vertices,
        dim: n - r,
    })
}

fn check_index_set(r: usize, n: usize, i_set: &[usize]) -> Result<()> {
    if r == 0 || r >= n {
        return Err(Error::BadParams(format!(
            "Δ({r},{n}) is not a hypersimplex"
        )));
    }
    if i_set.len() + 1 != r {
        return Err(Error::BadIndex(format!(
            "|I| = {}, expected r - 1 = {}",
            i_set.len(),
            r - 1
        )));
    }
    if i_set.iter().any(|&i| i >= n) {
        return Err(Error::BadIndex(format!("I = {i_set:?} leaves [{n}]")));
    }
    if i_set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadIndex(format!(
            "I = {i_set:?} is not strictly increasing"
        )));
    }
    Ok(())
}

/// The unique cell containing Γ_I and its cone at Γ_I modulo the span of Γ_I.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    /// Index into `Subdivision::cells`.
    pub cell: usize,
    pub gamma: Face,
    /// `i_r`: the smallest index not in `I`.
    pub i_r: usize,
    /// Extreme rays of the quotient cone in the coordinates `x_i`, `i ∈ I`.
    pub rays: Vec<Vec<i64>>,
    /// The same rays lifted to `Z^n` as combinations of `e_{i_r} − e_i`.
    pub generators: Vec<Vec<i64>>,
    pub simplicial: bool,
    pub unimodular: bool,
    pub determinant: i64,
    /// Whether the cone is all of `⟨e_{i_r} − e_i | i ∈ I⟩`.
    pub equals_full_cone: bool,
}

/// Finds the cell containing Γ_I and checks that its quotient cone is
/// simplicial and unimodular.
pub fn cell_containing_gamma(s: &Subdivision, i_set: &[usize]) -> Result<CellReport> {
    let (r, n) = s.params()?;
    let gamma = gamma_face(r, n, i_set)?;
    let containing: Vec<usize> = s
        .cells()
        .iter()
        .enumerate()
        .filter(|(_, c)| gamma.vertices.iter().all(|v| c.binary_search(v).is_ok()))
        .map(|(k, _)| k)
        .collect();
    if containing.len() != 1 {
        return Err(Error::NotUnique {
            count: containing.len(),
        });
    }
    let cell = containing[0];
    let i_r = (0..n).find(|j| !i_set.contains(j)).expect("r < n");
    let k = r - 1;

    // v − (e_I + e_j) restricted to the I coordinates is −1_{I \ S}
    let mut gens: Vec<Vec<BigInt>> = s.cells()[cell]
        .iter()
        .map(|&v| {
            let sset = support(&s.base().vertices()[v]);
            i_set
                .iter()
                .map(|i| {
                    if sset.contains(i) {
                        BigInt::from(0)
                    } else {
                        BigInt::from(-1)
                    }
                })
                .collect::<Vec<_>>()
        })
        .filter(|g| g.iter().any(|x| x.is_negative()))
        .collect();
    gens.sort();
    gens.dedup();

    let rays: Vec<Vec<BigInt>> = if k == 0 {
        Vec::new()
    } else {
        // facets of the generated cone, then its extreme rays
        let facets: Vec<Vec<BigInt>> = extreme_rays(&gens, k)?.into_iter().map(|r| r.dir).collect();
        let mut rays: Vec<Vec<BigInt>> = extreme_rays(&facets, k)?
            .into_iter()
            .map(|r| r.dir)
            .collect();
        rays.sort();
        rays
    };
    let rays_i64: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| i64::try_from(x).expect("small entries"))
                .collect()
        })
        .collect();
    if rays.len() != k {
        return Err(Error::NotSimplicial {
            rays: rays.len(),
            dim: k,
        });
    }
    let det = if k == 0 {
        Rational::one()
    } else {
        RationalMatrix::from_rows(
            rays.iter()
                .map(|r| r.iter().map(|x| Rational::from(x.clone())).collect())
                .collect(),
        )?
        .determinant()?
    };
    if det.abs() != Rational::one() {
        return Err(Error::NotUnimodular {
            det: det.to_string(),
        });
    }
    let generators = rays_i64
        .iter()
        .map(|y| {
            let mut g = vec![0i64; n];
            for (pos, &i) in i_set.iter().enumerate() {
                g[i] += y[pos];
                g[i_r] -= y[pos];
            }
            g
        })
        .collect();
    let mut full: Vec<Vec<i64>> = (0..k)
        .map(|pos| (0..k).map(|q| if q == pos { -1 } else { 0 }).collect())
        .collect();
    full.sort();
    Ok(CellReport {
        cell,
        gamma,
        i_r,
        equals_full_cone: rays_i64 == full,
        rays: rays_i64,
        generators,
        simplicial: true,
        unimodular: true,
        determinant: det.to_i64().expect("unit determinant"),
    })
}
