//! Iterated residues of logarithmic forms on generic arrangements and the
//! residue matrix on `∧^{r−1} h*`.
//!
//! The symbolic path handles `r ≤ 3` with univariate rational functions.
//! For larger `r` only [`determinant_residue`] is available; it is checked
//! against the symbolic path in ranks 2 and 3.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::subsets::{k_subsets, sort_with_sign, subset_rank};
use crate::exact::{Rational, RationalMatrix};
use crate::grassmann::{is_general_position, Arrangement};

/// Univariate polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `a x + b`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        Poly::new(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead().expect("nonzero").clone();
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") / &lead;
            for (i, b) in d.0.iter().enumerate() {
                rem[shift + i] -= &c * b;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.lead().cloned() {
            Some(l) => a.scale(&l.recip()),
            None => a,
        }
    }
}

/// Quotient of polynomials kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::BadParams("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let l = den.lead().expect("nonzero").recip();
        Ok(RatFunc {
            num: num.scale(&l),
            den: den.scale(&l),
        })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::default(),
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFunc::new(num, self.den.mul(&other.den)).expect("product of nonzero denominators")
    }

    /// Residue of `f(x) dx` at `x = a`; only simple poles are supported.
    pub fn residue_at(&self, a: &Rational) -> Result<Rational> {
        if !self.den.eval(a).is_zero() {
            return Ok(Rational::zero());
        }
        let root = Poly::linear(Rational::one(), -a);
        let (rest, _) = self.den.div_rem(&root);
        let at = rest.eval(a);
        if at.is_zero() {
            return Err(Error::Unsupported(format!("pole of order > 1 at {a}")));
        }
        Ok(self.num.eval(a) / at)
    }
}

/// `∧_m (Σ_j λ^{(m)}_j dF_j / F_j)` with every `λ^{(m)}` summing to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogForm {
    factors: Vec<Vec<Rational>>,
}

impl LogForm {
    pub fn new(factors: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(first) = factors.first() {
            let n = first.len();
            for (m, f) in factors.iter().enumerate() {
                if f.len() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "factor {} has {} entries, expected {n}",
                        m + 1,
                        f.len()
                    )));
                }
                if !f.iter().sum::<Rational>().is_zero() {
                    return Err(Error::BadParams(format!(
                        "factor {} does not sum to zero",
                        m + 1
                    )));
                }
            }
        }
        Ok(LogForm { factors })
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    /// `(e_{j_1} − e_n) ∧ … ∧ (e_{j_p} − e_n)`.
    pub fn basis_wedge(n: usize, subset: &[usize]) -> Result<Self> {
        if subset.iter().any(|&j| j + 1 >= n) {
            return Err(Error::IndexOutOfRange(format!(
                "basis wedge indices must be below {}",
                n
            )));
        }
        let factors = subset
            .iter()
            .map(|&j| {
                let mut v = vec![Rational::zero(); n];
                v[j] = Rational::one();
                v[n - 1] = -Rational::one();
                v
            })
            .collect();
        Self::new(factors)
    }

    pub fn factors(&self) -> &[Vec<Rational>] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn swapped(&self, a: usize, b: usize) -> LogForm {
        let mut factors = self.factors.clone();
        factors.swap(a, b);
        LogForm { factors }
    }
}

/// Character of the torus, an integer vector with coordinate sum zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct CharacterVector(Vec<i64>);

impl CharacterVector {
    pub fn new(m: Vec<i64>) -> Result<Self> {
        if m.iter().sum::<i64>() != 0 {
            return Err(Error::BadParams(
                "character must have coordinate sum zero".into(),
            ));
        }
        Ok(CharacterVector(m))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl TryFrom<Vec<i64>> for CharacterVector {
    type Error = Error;
    fn try_from(m: Vec<i64>) -> Result<Self> {
        CharacterVector::new(m)
    }
}

impl From<CharacterVector> for Vec<i64> {
    fn from(m: CharacterVector) -> Self {
        m.0
    }
}

/// Residue of `dχ^m / χ^m` along the boundary divisor of `x_i = 1`: `⟨e_i, m⟩`.
pub fn toric_residue(m: &CharacterVector, i: usize) -> i64 {
    m.0.get(i).copied().unwrap_or(0)
}

fn check_inputs(a: &Arrangement, w: &LogForm, i_set: &[usize]) -> Result<()> {
    if !is_general_position(a) {
        return Err(Error::OnDegenerate);
    }
    let (r, n) = (a.r(), a.n());
    if w.degree() + 1 != r {
        return Err(Error::DimensionMismatch(format!(
            "form has {} factors, expected {}",
            w.degree(),
            r - 1
        )));
    }
    if w.factors.iter().any(|f| f.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "factors must have {n} entries"
        )));
    }
    if i_set.len() + 1 != r || i_set.iter().any(|&i| i >= n) || sort_with_sign(i_set).is_none() {
        return Err(Error::BadIndex(format!(
            "need {} distinct indices below {n}",
            r - 1
        )));
    }
    Ok(())
}

/// `det(λ^{(m)}_{i_l})`.
pub fn determinant_residue(a: &Arrangement, w: &LogForm, i_set: &[usize]) -> Result<Rational> {
    check_inputs(a, w, i_set)?;
    let rows: Vec<Vec<Rational>> = w
        .factors
        .iter()
        .map(|f| i_set.iter().map(|&i| f[i].clone()).collect())
        .collect();
    let m = RationalMatrix::from_rows_with_cols(rows, i_set.len())?;
    m.determinant()
}

/// Iterated Poincaré residue of `w` at `∩_{i ∈ I} H_i`, taken along `H_{i_1}`
/// first; `r ∈ {2, 3}`.
pub fn iterated_residue(a: &Arrangement, w: &LogForm, i_set: &[usize]) -> Result<Rational> {
    check_inputs(a, w, i_set)?;
    let forms = a.forms().to_rows();
    match a.r() {
        2 => residue_on_line(&forms, &w.factors[0], i_set[0]),
        3 => residue_on_plane(&forms, &w.factors[0], &w.factors[1], i_set[0], i_set[1]),
        r => Err(Error::Unsupported(format!(
            "symbolic residues need r <= 3, got r = {r}; use the determinant formula"
        ))),
    }
}

/// The identity, then Vandermonde matrices `V[i][j] = (t + i + 1)^j` and
/// their transposes, tried as coordinate changes until a chart works.
fn coordinate_changes(r: usize) -> impl Iterator<Item = Vec<Vec<Rational>>> {
    let identity = (0..r)
        .map(|i| (0..r).map(|j| Rational::from(i64::from(i == j))).collect())
        .collect();
    std::iter::once(identity).chain((0i64..64).flat_map(move |t| {
        let v: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| Rational::from((t + i as i64 + 1).pow(j as u32)))
                    .collect()
            })
            .collect();
        let vt = (0..r)
            .map(|i| (0..r).map(|j| v[j][i].clone()).collect())
            .collect();
        [v, vt]
    }))
}

fn change(forms: &[Vec<Rational>], a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    forms
        .iter()
        .map(|f| {
            (0..a.len())
                .map(|j| (0..a.len()).map(|k| &f[k] * &a[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Chart `y = 1`: `Σ λ_j dF_j/F_j = Σ λ_j f_{j1} dx / (f_{j1} x + f_{j2})`.
fn residue_on_line(forms: &[Vec<Rational>], lambda: &[Rational], i: usize) -> Result<Rational> {
    for a in coordinate_changes(2) {
        let f = change(forms, &a);
        if f[i][0].is_zero() {
            continue;
        }
        let mut total = RatFunc::zero();
        for (j, fj) in f.iter().enumerate() {
            if lambda[j].is_zero() || fj[0].is_zero() {
                continue;
            }
            let term = RatFunc::new(
                Poly::constant(&lambda[j] * &fj[0]),
                Poly::linear(fj[0].clone(), fj[1].clone()),
            )?;
            total = total.add(&term);
        }
        let root = -(&f[i][1] / &f[i][0]);
        return total.residue_at(&root);
    }
    Err(Error::OnDegenerate)
}

/// Chart `z = 1`. Writes `w = Σ_{j<k} c_{jk} dx∧dy / (F_j F_k)`, takes the
/// residue in `x` along `F_{i1} = 0`, then the residue in `y` at the point
/// where `F_{i2}` meets that line.
fn residue_on_plane(
    forms: &[Vec<Rational>],
    l1: &[Rational],
    l2: &[Rational],
    i1: usize,
    i2: usize,
) -> Result<Rational> {
    let n = forms.len();
    for a in coordinate_changes(3) {
        let f = change(forms, &a);
        let p = &f[i1];
        if p[0].is_zero() {
            continue;
        }
        // on F_{i1} = 0: x = α y + β
        let alpha = -(&p[1] / &p[0]);
        let beta = -(&p[2] / &p[0]);
        let restrict = |g: &[Rational]| Poly::linear(&g[0] * &alpha + &g[1], &g[0] * &beta + &g[2]);
        let target = restrict(&f[i2]);
        if target.degree() != Some(1) {
            continue;
        }
        let mut first = RatFunc::zero();
        for o in (0..n).filter(|&o| o != i1) {
            let (j, k) = if i1 < o { (i1, o) } else { (o, i1) };
            let wedge = &l1[j] * &l2[k] - &l1[k] * &l2[j];
            if wedge.is_zero() {
                continue;
            }
            let jac = &f[j][0] * &f[k][1] - &f[j][1] * &f[k][0];
            // Res_x dx∧dy / (F_{i1} F_o) = dy / (f_{i1,x} F_o|)
            let c = wedge * jac / &p[0];
            let den = restrict(&f[o]);
            if den.is_zero() {
                return Err(Error::OnDegenerate);
            }
            first = first.add(&RatFunc::new(Poly::constant(c), den)?);
        }
        let c = target.coeffs();
        let root = -(&c[0] / &c[1]);
        return first.residue_at(&root);
    }
    Err(Error::OnDegenerate)
}

/// Rows: lexicographic wedges of `e_j − e_n`, `j < n`; columns: `(r−1)`-subsets.
pub fn residue_matrix(a: &Arrangement) -> Result<RationalMatrix> {
    residue_matrix_by(a, iterated_residue)
}

pub fn determinant_matrix(a: &Arrangement) -> Result<RationalMatrix> {
    residue_matrix_by(a, determinant_residue)
}

fn residue_matrix_by(
    a: &Arrangement,
    f: impl Fn(&Arrangement, &LogForm, &[usize]) -> Result<Rational>,
) -> Result<RationalMatrix> {
    if !is_general_position(a) {
        return Err(Error::OnDegenerate);
    }
    let (r, n) = (a.r(), a.n());
    let rows = k_subsets(n - 1, r - 1);
    let cols = k_subsets(n, r - 1);
    let mut m = RationalMatrix::zeros(rows.len(), cols.len());
    for (i, j_set) in rows.iter().enumerate() {
        let w = LogForm::basis_wedge(n, j_set)?;
        for (c, i_set) in cols.iter().enumerate() {
            m.set(i, c, f(a, &w, i_set)?);
        }
    }
    Ok(m)
}

/// Coordinates of `∧_{j ∈ J}(e_j − e_n)` in the `e_I` basis of `∧^{r−1} k^n`,
/// by multilinear expansion.
pub fn inclusion_matrix(r: usize, n: usize) -> RationalMatrix {
    let rows = k_subsets(n - 1, r - 1);
    let cols = k_subsets(n, r - 1);
    let mut m = RationalMatrix::zeros(rows.len(), cols.len());
    for (i, j_set) in rows.iter().enumerate() {
        // each factor contributes e_j or −e_n
        for mask in 0u32..(1 << j_set.len()) {
            let seq: Vec<usize> = j_set
                .iter()
                .enumerate()
                .map(|(b, &j)| if mask >> b & 1 == 1 { n - 1 } else { j })
                .collect();
            if let Some((sorted, sign)) = sort_with_sign(&seq) {
                let neg = mask.count_ones() % 2 == 1;
                let s = if neg { -sign } else { sign };
                let c = subset_rank(n, &sorted);
                let v = m.get(i, c).clone() + Rational::from(s);
                m.set(i, c, v);
            }
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueReport {
    pub r: usize,
    pub n: usize,
    pub matrix: RationalMatrix,
    pub inclusion: RationalMatrix,
    pub matches_inclusion: bool,
    pub determinant_agrees: bool,
    pub rank: usize,
    pub full_row_rank: bool,
    pub passed: bool,
}

pub fn residue_report(a: &Arrangement) -> Result<ResidueReport> {
    let (r, n) = (a.r(), a.n());
    let matrix = residue_matrix(a)?;
    let inclusion = inclusion_matrix(r, n);
    let determinant_agrees = determinant_matrix(a)? == matrix;
    let rank = if matrix.rows() == 0 { 0 } else { matrix.rank() };
    let matches_inclusion = matrix == inclusion;
    let full_row_rank = rank == matrix.rows();
    Ok(ResidueReport {
        r,
        n,
        matrix,
        inclusion,
        matches_inclusion,
        determinant_agrees,
        rank,
        full_row_rank,
        passed: matches_inclusion && determinant_agrees && full_row_rank,
    })
}

/// True iff the residue matrix is the inclusion matrix and has full row rank.
pub fn verify_residue_theorem(a: &Arrangement) -> Result<bool> {
    let m = residue_matrix(a)?;
    Ok(m == inclusion_matrix(a.r(), a.n()) && m.rank() == m.rows())
}
