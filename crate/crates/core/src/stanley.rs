//! Graded pieces of stable toric algebras R[Ω, t] over subdivisions of
//! Δ(r, n): equalizer dimensions, the Stanley product, Hilbert function
//! checks and saturation of matroid semigroups.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::subsets::subset_rank;
use crate::exact::{Rational, RationalMatrix};
use crate::matroid::Matroid;
use crate::polytope::HRep;
use crate::subdivision::Subdivision;

/// A weight `a ∈ Z^n_{≥0}` with `Σ a_i = r · level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightPoint {
    pub a: Vec<i64>,
    pub level: i64,
}

impl WeightPoint {
    pub fn new(r: usize, a: Vec<i64>) -> Result<Self> {
        if a.iter().any(|&x| x < 0) {
            return Err(Error::BadParams(format!("negative weight {a:?}")));
        }
        let total: i64 = a.iter().sum();
        if r == 0 || total % r as i64 != 0 {
            return Err(Error::BadParams(format!(
                "weight sum {total} is not a multiple of r = {r}"
            )));
        }
        Ok(WeightPoint {
            level: total / r as i64,
            a,
        })
    }

    pub fn zero(n: usize) -> Self {
        WeightPoint {
            a: vec![0; n],
            level: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }
}

/// All weights of level `d` in the cone over Δ(r, n): `0 ≤ a_i ≤ d`,
/// `Σ a_i = r d`.
pub fn cone_points(r: usize, n: usize, d: i64) -> Vec<WeightPoint> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fill(&mut cur, 0, r as i64 * d, d, &mut out);
    out.into_iter()
        .map(|a| WeightPoint { a, level: d })
        .collect()
}

fn fill(cur: &mut Vec<i64>, i: usize, remaining: i64, bound: i64, out: &mut Vec<Vec<i64>>) {
    let n = cur.len();
    if i == n {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let slots_after = (n - i - 1) as i64;
    let lo = (remaining - bound * slots_after).max(0);
    let hi = remaining.min(bound);
    for v in lo..=hi {
        cur[i] = v;
        fill(cur, i + 1, remaining - v, bound, out);
    }
    cur[i] = 0;
}

/// Torus elements attached to pairs (face, facet of face) of the glued
/// complex; missing pairs carry the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GluingData {
    n: usize,
    entries: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Rational>>,
}

impl GluingData {
    pub fn identity(n: usize) -> Self {
        GluingData {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// `t_{FG} = s_F^{-1} s_G` for random `s` on every face: a valid
    /// cocycle that is not identically one.
    pub fn random_coboundary<R: Rng>(s: &Subdivision, rng: &mut R) -> Result<Self> {
        let n = s.base().ambient();
        let complex = s.complex()?;
        let poset = complex.poset();
        let scales: Vec<Vec<Rational>> = (0..poset.len())
            .map(|_| (0..n).map(|_| random_unit(rng)).collect())
            .collect();
        let mut data = GluingData::identity(n);
        for f in 0..poset.len() {
            for g in poset.facets_of(f) {
                let t = scales[f]
                    .iter()
                    .zip(&scales[g])
                    .map(|(sf, sg)| sg / sf)
                    .collect();
                data.set(&poset.face(f).vertices, &poset.face(g).vertices, t)?;
            }
        }
        Ok(data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets `t` for the pair (face, facet), both given as base-vertex index sets.
    pub fn set(&mut self, face: &[usize], facet: &[usize], t: Vec<Rational>) -> Result<()> {
        if t.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "torus element of length {}",
                t.len()
            )));
        }
        if let Some(i) = t.iter().position(Zero::is_zero) {
            return Err(Error::ZeroScale(i + 1));
        }
        let mut f = face.to_vec();
        let mut g = facet.to_vec();
        f.sort_unstable();
        g.sort_unstable();
        self.entries.insert((f, g), t);
        Ok(())
    }

    pub fn get(&self, face: &[usize], facet: &[usize]) -> Option<&Vec<Rational>> {
        self.entries.get(&(face.to_vec(), facet.to_vec()))
    }

    /// Character value `a(t_{FG}) = Π t_i^{a_i}`.
    pub fn character(&self, face: &[usize], facet: &[usize], a: &[i64]) -> Rational {
        match self.get(face, facet) {
            None => Rational::one(),
            Some(t) => character(a, t),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Vec<usize>, Vec<usize>), &Vec<Rational>)> {
        self.entries.iter()
    }

    /// JSON form for a subdivision of Δ(r, n): faces as lists of 1-based subsets.
    pub fn to_json(&self, s: &Subdivision) -> Result<GluingJson> {
        let (_, n) = s.params()?;
        let subsets = |vs: &[usize]| -> Vec<Vec<usize>> {
            vs.iter()
                .map(|&v| {
                    (0..n)
                        .filter(|&i| s.base().vertices()[v][i] == 1)
                        .map(|i| i + 1)
                        .collect()
                })
                .collect()
        };
        Ok(GluingJson {
            entries: self
                .entries
                .iter()
                .map(|((f, g), t)| GluingEntry {
                    face: subsets(f),
                    facet: subsets(g),
                    t: t.clone(),
                })
                .collect(),
        })
    }

    pub fn from_json(json: &GluingJson, s: &Subdivision) -> Result<Self> {
        let (r, n) = s.params()?;
        let index = |sets: &[Vec<usize>]| -> Result<Vec<usize>> {
            sets.iter()
                .map(|b| {
                    let mut b: Vec<usize> = b
                        .iter()
                        .map(|&i| {
                            i.checked_sub(1)
                                .filter(|&i| i < n)
                                .ok_or_else(|| Error::IndexOutOfRange(format!("{i} in [{n}]")))
                        })
                        .collect::<Result<_>>()?;
                    b.sort_unstable();
                    if b.len() != r {
                        return Err(Error::Parse(format!("{b:?} is not an {r}-subset")));
                    }
                    Ok(subset_rank(n, &b))
                })
                .collect()
        };
        let mut data = GluingData::identity(n);
        for e in &json.entries {
            data.set(&index(&e.face)?, &index(&e.facet)?, e.t.clone())?;
        }
        Ok(data)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GluingJson {
    pub entries: Vec<GluingEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GluingEntry {
    #[serde(alias = "cell")]
    pub face: Vec<Vec<usize>>,
    pub facet: Vec<Vec<usize>>,
    pub t: Vec<Rational>,
}

fn random_unit<R: Rng>(rng: &mut R) -> Rational {
    let p = loop {
        let p: i64 = rng.random_range(-4..=4);
        if p != 0 {
            break p;
        }
    };
    Rational::new(p, rng.random_range(1..=3i64))
}

pub fn character(a: &[i64], t: &[Rational]) -> Rational {
    a.iter()
        .zip(t)
        .filter(|(&ai, _)| ai != 0)
        .map(|(&ai, ti)| ti.pow(ai as i32))
        .product()
}

/// For every face σ containing `a` and every codimension-two face υ of σ
/// containing `a`, the two routes σ → τ_k → υ must give equal characters.
pub fn check_cocycle_at(s: &Subdivision, t: &GluingData, a: &WeightPoint) -> Result<()> {
    let complex = s.complex()?;
    let poset = complex.poset();
    let inside: Vec<bool> = {
        let mut v = vec![false; poset.len()];
        for i in complex.faces_containing(&a.a, a.level) {
            v[i] = true;
        }
        v
    };
    for sigma in 0..poset.len() {
        if !inside[sigma] {
            continue;
        }
        let fv = &poset.face(sigma).vertices;
        let mut routes: HashMap<usize, Vec<Rational>> = HashMap::new();
        for tau in poset.facets_of(sigma) {
            let tv = &poset.face(tau).vertices;
            let first = t.character(fv, tv, &a.a);
            for upsilon in poset.facets_of(tau) {
                if !inside[upsilon] {
                    continue;
                }
                let uv = &poset.face(upsilon).vertices;
                routes
                    .entry(upsilon)
                    .or_default()
                    .push(&first * t.character(tv, uv, &a.a));
            }
        }
        for (upsilon, values) in routes {
            if values.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::BadGluing(format!(
                    "face {:?} to {:?} at weight {:?}",
                    fv,
                    poset.face(upsilon).vertices,
                    a.a
                )));
            }
        }
    }
    Ok(())
}

/// Dimension of the weight-`a` piece of R[Ω, t]: the kernel of the
/// character-scaled difference map from the cells containing `a` to the
/// interior facets containing `a`.
pub fn graded_dim(s: &Subdivision, t: &GluingData, a: &WeightPoint) -> Result<usize> {
    check_cocycle_at(s, t, a)?;
    let complex = s.complex()?;
    let poset = complex.poset();
    let containing = complex.faces_containing(&a.a, a.level);
    let cells: Vec<usize> = poset
        .cells()
        .iter()
        .copied()
        .filter(|c| containing.contains(c))
        .collect();
    if cells.is_empty() {
        return Ok(0);
    }
    let column: HashMap<usize, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut rows = Vec::new();
    for &tau in &containing {
        if complex.on_boundary(tau) {
            continue;
        }
        let sides: Vec<usize> = poset
            .cofacets_of(tau)
            .iter()
            .copied()
            .filter(|c| column.contains_key(c))
            .collect();
        let tv = &poset.face(tau).vertices;
        for pair in sides.windows(2) {
            let mut row = vec![Rational::zero(); cells.len()];
            let (s1, s2) = (pair[0], pair[1]);
            row[column[&s1]] = t.character(&poset.face(s1).vertices, tv, &a.a);
            row[column[&s2]] = -t.character(&poset.face(s2).vertices, tv, &a.a);
            rows.push(row);
        }
    }
    let rank = if rows.is_empty() {
        0
    } else {
        RationalMatrix::from_rows(rows)?.rank()
    };
    Ok(cells.len() - rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFailure {
    pub a: Vec<i64>,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub d_max: i64,
    pub cone_points: usize,
    pub outside_points: usize,
    pub failures: Vec<HilbertFailure>,
}

impl HilbertReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `graded_dim = 1` on every cone point of level at most `d_max`, and `0` on
/// `outside` random weights with some `a_i > d`.
pub fn hilbert_check<R: Rng>(
    s: &Subdivision,
    t: &GluingData,
    d_max: i64,
    outside: usize,
    rng: &mut R,
) -> Result<HilbertReport> {
    let (r, n) = s.params()?;
    let mut failures = Vec::new();
    let mut count = 0;
    for d in 0..=d_max {
        for a in cone_points(r, n, d) {
            count += 1;
            let found = graded_dim(s, t, &a)?;
            if found != 1 {
                failures.push(HilbertFailure {
                    a: a.a,
                    expected: 1,
                    found,
                });
            }
        }
    }
    for _ in 0..outside {
        let a = random_outside_point(r, n, d_max.max(1), rng);
        let found = graded_dim(s, t, &a)?;
        if found != 0 {
            failures.push(HilbertFailure {
                a: a.a,
                expected: 0,
                found,
            });
        }
    }
    Ok(HilbertReport {
        d_max,
        cone_points: count,
        outside_points: outside,
        failures,
    })
}

/// A nonnegative weight of some level `1 ≤ d ≤ d_max` with one coordinate
/// exceeding `d`.
pub fn random_outside_point<R: Rng>(r: usize, n: usize, d_max: i64, rng: &mut R) -> WeightPoint {
    let d = rng.random_range(1..=d_max);
    let total = r as i64 * d;
    let big = rng.random_range(d + 1..=total);
    let i = rng.random_range(0..n);
    let mut a = vec![0i64; n];
    a[i] = big;
    for _ in 0..total - big {
        let j = loop {
            let j = rng.random_range(0..n);
            if j != i {
                break j;
            }
        };
        a[j] += 1;
    }
    WeightPoint { a, level: d }
}

/// With trivial gluing: `a + b` if one cell's cone contains both, else `None`.
pub fn stanley_product(
    a: &WeightPoint,
    b: &WeightPoint,
    s: &Subdivision,
) -> Result<Option<WeightPoint>> {
    let complex = s.complex()?;
    let poset = complex.poset();
    let in_a = complex.faces_containing(&a.a, a.level);
    let in_b = complex.faces_containing(&b.a, b.level);
    let shared = poset
        .cells()
        .iter()
        .any(|c| in_a.contains(c) && in_b.contains(c));
    Ok(shared.then(|| WeightPoint {
        a: a.a.iter().zip(&b.a).map(|(x, y)| x + y).collect(),
        level: a.level + b.level,
    }))
}

/// Every level-`d` lattice point of the cone over the matroid polytope is a
/// sum of `d` basis indicator vectors.
pub fn white_check(m: &Matroid, d: i64) -> Result<bool> {
    let bases: Vec<Vec<usize>> = m.bases().iter().cloned().collect();
    white_check_family(m.n(), m.r(), &bases, d)
}

/// The same test for an arbitrary family of r-subsets.
pub fn white_check_family(n: usize, r: usize, family: &[Vec<usize>], d: i64) -> Result<bool> {
    Ok(white_failures(n, r, family, d)?.is_empty())
}

/// Level-`d` points of the cone over `conv(family)` that are not sums of `d`
/// members of the family.
pub fn white_failures(n: usize, r: usize, family: &[Vec<usize>], d: i64) -> Result<Vec<Vec<i64>>> {
    let vertices: Vec<Vec<i64>> = family
        .iter()
        .map(|b| crate::polytope::indicator(n, b))
        .collect();
    let hull = HRep::of_points(&vertices)?;
    let mut memo = HashMap::new();
    Ok(cone_points(r, n, d)
        .into_iter()
        .filter(|p| {
            let x: Vec<Rational> = p.a.iter().map(|&ai| Rational::new(ai, d.max(1))).collect();
            d > 0 && hull.contains(&x)
        })
        .filter(|p| !decomposes(&p.a, d, &vertices, 0, &mut memo))
        .map(|p| p.a)
        .collect())
}

fn decomposes(
    a: &[i64],
    d: i64,
    vertices: &[Vec<i64>],
    start: usize,
    memo: &mut HashMap<(Vec<i64>, usize), bool>,
) -> bool {
    if d == 0 {
        return a.iter().all(|&x| x == 0);
    }
    let key = (a.to_vec(), start);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut ok = false;
    for k in start..vertices.len() {
        let v = &vertices[k];
        if v.iter().zip(a).all(|(vi, ai)| vi <= ai) {
            let rest: Vec<i64> = a.iter().zip(v).map(|(x, y)| x - y).collect();
            if decomposes(&rest, d - 1, vertices, k, memo) {
                ok = true;
                break;
            }
        }
    }
    memo.insert(key, ok);
    ok
}
