//! Finite Puiseux polynomials over the rationals, univariate and bivariate
//! polynomials with Puiseux coefficients, Sylvester resultants and
//! Newton-polygon root valuations.
//!
//! A [`PuiseuxScalar`] is a finite sum `Σ aₖ t^{eₖ}` with `aₖ ∈ ℚ∖{0}` and
//! strictly increasing rational exponents. Its valuation is the smallest
//! exponent. All arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PuiseuxScalar {
    /// `(coefficient, exponent)`, exponents strictly increasing.
    terms: Vec<(Rat, Rat)>,
}

impl PuiseuxScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, Rat::zero())
    }

    /// `c · t^e`.
    pub fn monomial(c: Rat, e: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            PuiseuxScalar { terms: vec![(c, e)] }
        }
    }

    /// `t^e`.
    pub fn t_pow(e: Rat) -> Self {
        Self::monomial(Rat::one(), e)
    }

    /// Builds a scalar from arbitrary `(coefficient, exponent)` pairs, merging
    /// equal exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Rat, Rat)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (c, e) in terms {
            *acc.entry(e).or_insert_with(Rat::zero) += c;
        }
        PuiseuxScalar {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (c, e))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Rat::one() && self.terms[0].1.is_zero()
    }

    /// Valuation: the minimal exponent, `None` standing for `+∞` on zero.
    pub fn val(&self) -> Option<Rat> {
        self.terms.first().map(|(_, e)| e.clone())
    }

    /// Coefficient of the lowest-order term.
    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.terms.first().map(|(c, _)| c)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxScalar {
            terms: self.terms.iter().map(|(a, e)| (a * c, e.clone())).collect(),
        }
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: &Rat) -> Self {
        PuiseuxScalar {
            terms: self.terms.iter().map(|(a, x)| (a.clone(), x + e)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Evaluation is only defined when every exponent is an integer or `t` is
    /// specialised; here `t` is replaced by a rational and only integer
    /// exponents are accepted. Used by tests as an independent check.
    pub fn eval_integral(&self, t: &Rat) -> Option<Rat> {
        let mut s = Rat::zero();
        for (c, e) in &self.terms {
            let k = e.to_i64()?;
            let p = if k >= 0 {
                t.pow(k as u32)
            } else {
                t.recip().pow((-k) as u32)
            };
            s += c * &p;
        }
        Some(s)
    }
}

impl fmt::Display for PuiseuxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, e)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{a}")?;
                continue;
            }
            if a != Rat::one() {
                write!(f, "{a}*")?;
            }
            if *e == Rat::one() {
                write!(f, "t")?;
            } else {
                write!(f, "t^({e})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl<'a, 'b> Add<&'b PuiseuxScalar> for &'a PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn add(self, rhs: &'b PuiseuxScalar) -> PuiseuxScalar {
        // merge of two sorted lists
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].1.cmp(&b[j].1) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].0 + &b[j].0;
                    if !c.is_zero() {
                        out.push((c, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        PuiseuxScalar { terms: out }
    }
}

impl<'a> Neg for &'a PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn neg(self) -> PuiseuxScalar {
        PuiseuxScalar {
            terms: self.terms.iter().map(|(c, e)| (-c, e.clone())).collect(),
        }
    }
}

impl Neg for PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn neg(self) -> PuiseuxScalar {
        -&self
    }
}

impl<'a, 'b> Sub<&'b PuiseuxScalar> for &'a PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn sub(self, rhs: &'b PuiseuxScalar) -> PuiseuxScalar {
        self + &(-rhs)
    }
}

impl<'a, 'b> Mul<&'b PuiseuxScalar> for &'a PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn mul(self, rhs: &'b PuiseuxScalar) -> PuiseuxScalar {
        if self.is_zero() || rhs.is_zero() {
            return PuiseuxScalar::zero();
        }
        PuiseuxScalar::from_terms(self.terms.iter().flat_map(|(a, e)| {
            rhs.terms.iter().map(move |(b, f)| (a * b, e + f))
        }))
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
    };
}

owned_ops!(PuiseuxScalar);

/// Dense univariate polynomial with Puiseux coefficients, index = degree.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct UniPoly {
    coeffs: Vec<PuiseuxScalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: PuiseuxScalar) -> Self {
        Self::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<PuiseuxScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[PuiseuxScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PuiseuxScalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at zero (index of the first nonzero coefficient).
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})·X^{i}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<'a, 'b> Add<&'b UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'b UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a, 'b> Sub<&'b UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'b UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<'a, 'b> Mul<&'b UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'b UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![PuiseuxScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        UniPoly::new(out)
    }
}

owned_ops!(UniPoly);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
}

/// Sparse bivariate polynomial `Σ c_{ij} x^i y^j` with Puiseux coefficients.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), PuiseuxScalar>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), PuiseuxScalar)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn constant(c: PuiseuxScalar) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn var(v: Var) -> Self {
        let m = match v {
            Var::X => (1, 0),
            Var::Y => (0, 1),
        };
        Self::from_terms([(m, PuiseuxScalar::one())])
    }

    pub fn add_term(&mut self, m: (u32, u32), c: &PuiseuxScalar) {
        let cur = self.terms.remove(&m).unwrap_or_default();
        let next = &cur + c;
        if !next.is_zero() {
            self.terms.insert(m, next);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), PuiseuxScalar> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> PuiseuxScalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().copied().collect()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::X { i } else { j })
            .max()
            .unwrap_or(0)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(PuiseuxScalar::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Views the polynomial as univariate in `v`: entry `k` is the
    /// coefficient of `v^k`, a polynomial in the other variable.
    pub fn as_univariate_in(&self, v: Var) -> Vec<UniPoly> {
        let d = self.degree_in(v) as usize;
        let mut out: Vec<Vec<PuiseuxScalar>> = vec![Vec::new(); d + 1];
        for (&(i, j), c) in &self.terms {
            let (k, other) = if v == Var::X { (i, j) } else { (j, i) };
            let row = &mut out[k as usize];
            if row.len() <= other as usize {
                row.resize(other as usize + 1, PuiseuxScalar::zero());
            }
            row[other as usize] = c.clone();
        }
        out.into_iter().map(UniPoly::new).collect()
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::print_poly(self))
    }
}

impl<'a, 'b> Add<&'b BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &'b BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Neg for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl<'a, 'b> Sub<&'b BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &'b BivariatePoly) -> BivariatePoly {
        self + &(-rhs)
    }
}

impl<'a, 'b> Mul<&'b BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &'b BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), &(a * b));
            }
        }
        out
    }
}

owned_ops!(BivariatePoly);

/// Determinant by cofactor expansion along the first row, skipping zero
/// entries. Division-free, so it works over the coefficient ring directly.
fn det(m: &[Vec<UniPoly>]) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::constant(PuiseuxScalar::one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &det(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Sylvester resultant of `f` and `g` with respect to `var`, as a polynomial
/// in the remaining variable.
pub fn resultant_wrt(f: &BivariatePoly, g: &BivariatePoly, var: Var) -> Result<UniPoly> {
    let fu = f.as_univariate_in(var);
    let gu = g.as_univariate_in(var);
    let m = fu.len() - 1;
    let n = gu.len() - 1;
    if m == 0 || n == 0 || f.is_zero() || g.is_zero() {
        return Err(Error::NotPositiveDegree(if var == Var::X { 'x' } else { 'y' }));
    }
    let size = m + n;
    let mut rows = vec![vec![UniPoly::zero(); size]; size];
    // rows 0..n: shifts of f, highest degree first
    for r in 0..n {
        for k in 0..=m {
            rows[r][r + k] = fu[m - k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            rows[n + r][r + k] = gu[n - k].clone();
        }
    }
    let res = det(&rows);
    if res.is_zero() {
        return Err(Error::IdenticallyZeroResultant);
    }
    Ok(res)
}

/// Valuations of the nonzero roots of a univariate polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootValuations {
    /// `(valuation, multiplicity)`, sorted by valuation.
    pub values: Vec<(Rat, u32)>,
    /// Number of roots at zero (order of vanishing).
    pub zero_roots: u32,
}

impl RootValuations {
    pub fn total(&self) -> u32 {
        self.values.iter().map(|(_, m)| m).sum()
    }

    /// Valuations expanded by multiplicity.
    pub fn expanded(&self) -> Vec<Rat> {
        self.values
            .iter()
            .flat_map(|(v, m)| std::iter::repeat(v.clone()).take(*m as usize))
            .collect()
    }
}

/// Root valuations are the negated slopes of the lower convex hull of
/// `{(i, val aᵢ)}`, each with multiplicity equal to the segment's width.
pub fn newton_root_valuations(p: &UniPoly) -> RootValuations {
    let pts: Vec<(i64, Rat)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.val().map(|v| (i as i64, v)))
        .collect();
    let zero_roots = pts.first().map(|(i, _)| *i as u32).unwrap_or(0);
    let hull = lower_hull_1d(&pts);
    let mut values: Vec<(Rat, u32)> = Vec::new();
    for w in hull.windows(2) {
        let (i0, v0) = &w[0];
        let (i1, v1) = &w[1];
        let width = i1 - i0;
        let slope = (v1 - v0) / Rat::from_int(width);
        values.push((-slope, width as u32));
    }
    values.sort_by(|a, b| a.0.cmp(&b.0));
    RootValuations { values, zero_roots }
}

/// Lower convex hull of points sorted by strictly increasing abscissa.
/// Collinear interior points are dropped.
pub(crate) fn lower_hull_1d(pts: &[(i64, Rat)]) -> Vec<(i64, Rat)> {
    let mut hull: Vec<(i64, Rat)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            // keep b only if it lies strictly below segment a-p
            let lhs = (&b.1 - &a.1) * Rat::from_int(p.0 - a.0);
            let rhs = (&p.1 - &a.1) * Rat::from_int(b.0 - a.0);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p.clone());
    }
    hull
}
