//! Faces of a matroid decomposition not contained in any facet `x_i = 0`.

use serde::Serialize;

use super::{is_matroid_decomposition, support, BoundaryLabel, Subdivision};
use crate::error::{Error, Result};
use crate::exact::subsets::subset_key;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// Vertices as 1-based subset keys such as `"1,2"`.
    pub vertices: Vec<String>,
    pub dim: usize,
    /// `dim − (n − r)`.
    pub stratum_dim: usize,
    pub label: BoundaryLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrataPoset {
    pub r: usize,
    pub n: usize,
    pub elements: Vec<Stratum>,
    /// Pairs `(a, b)` with element `b` a facet of element `a`.
    pub covers: Vec<(usize, usize)>,
}

impl StrataPoset {
    /// Number of elements of each stratum dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let top = self
            .elements
            .iter()
            .map(|e| e.stratum_dim)
            .max()
            .unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for e in &self.elements {
            counts[e.stratum_dim] += 1;
        }
        counts
    }

    /// Graphviz rendering of the cover relation.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph strata {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            out.push_str(&format!(
                "  s{i} [label=\"{{{}}}\\ndim {}\"];\n",
                e.vertices.join(" "),
                e.stratum_dim
            ));
        }
        for (a, b) in &self.covers {
            out.push_str(&format!("  s{b} -> s{a};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// The strata poset of a matroid decomposition of Δ(r, n).
pub fn strata_poset(s: &Subdivision) -> Result<StrataPoset> {
    let (r, n) = s.params()?;
    if !is_matroid_decomposition(s)? {
        return Err(Error::NotMatroidal(
            "some cell is not a matroid polytope".into(),
        ));
    }
    let complex = s.complex()?;
    let poset = complex.poset();
    let kept: Vec<usize> = (0..poset.len())
        .filter(|&i| complex.label(i) != BoundaryLabel::LowerBoundary)
        .collect();
    let mut position = vec![None; poset.len()];
    for (k, &i) in kept.iter().enumerate() {
        position[i] = Some(k);
    }
    let mut elements = Vec::with_capacity(kept.len());
    for &i in &kept {
        let face = poset.face(i);
        let stratum_dim = face.dim.checked_sub(n - r).ok_or_else(|| {
            Error::NotMatroidal(format!(
                "face of dimension {} avoids every x_i = 0",
                face.dim
            ))
        })?;
        elements.push(Stratum {
            vertices: face
                .vertices
                .iter()
                .map(|&v| subset_key(&support(&s.base().vertices()[v])))
                .collect(),
            dim: face.dim,
            stratum_dim,
            label: complex.label(i),
        });
    }
    let mut covers = Vec::new();
    for &i in &kept {
        for j in poset.facets_of(i) {
            if let (Some(a), Some(b)) = (position[i], position[j]) {
                covers.push((a, b));
            }
        }
    }
    covers.sort_unstable();
    Ok(StrataPoset {
        r,
        n,
        elements,
        covers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_2_4() {
        let s = Subdivision::trivial_hypersimplex(2, 4).unwrap();
        let p = strata_poset(&s).unwrap();
        assert_eq!(p.counts_by_dim(), vec![4, 1]);
        assert_eq!(p.covers.len(), 4);
        assert!(p.to_dot().starts_with("digraph"));
    }

    #[test]
    fn trivial_3_5() {
        let s = Subdivision::trivial_hypersimplex(3, 5).unwrap();
        let p = strata_poset(&s).unwrap();
        assert_eq!(p.counts_by_dim(), vec![10, 5, 1]);
    }
}
