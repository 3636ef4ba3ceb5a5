use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use super::scalar::{Domain, Scalar};
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically with `X_0 > X_1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `deg` in `nvars` variables, in
/// decreasing graded-lex order (`X_0^deg` first).
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(deg);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e);
            rec(nvars, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(nvars, deg, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Sparse homogeneous polynomial in `nvars` variables.
///
/// All stored monomials share one total degree; the zero polynomial has no
/// terms and no degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl HomPoly {
    pub fn zero(nvars: usize) -> Self {
        HomPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize, domain: Domain) -> Self {
        Self::monomial(Monomial::var(nvars, i), domain.one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        HomPoly { nvars, terms }
    }

    /// Collect terms, summing repeated monomials; rejects mixed degrees.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            match map.get_mut(&m) {
                Some(existing) => *existing = &*existing + &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        let mut degrees: Vec<u32> = map.keys().map(Monomial::degree).collect();
        degrees.dedup();
        if degrees.len() > 1 {
            let offending = map
                .keys()
                .map(|m| format!("{} (deg {})", fmt_monomial(m, &default_names(nvars)), m.degree()))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(Error::Inhomogeneous { degrees, offending });
        }
        Ok(HomPoly { nvars, terms: map })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Sum; panics when both sides are nonzero of different degrees.
    pub fn add(&self, other: &HomPoly) -> HomPoly {
        self.try_add(other).expect("homogeneous sum")
    }

    pub fn try_add(&self, other: &HomPoly) -> Result<HomPoly> {
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(Error::Inhomogeneous {
                    degrees: vec![a, b],
                    offending: format!("{self} + {other}"),
                });
            }
        }
        let mut out = self.clone();
        out.add_scaled_assign(other, None);
        Ok(out)
    }

    pub fn sub(&self, other: &HomPoly) -> HomPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomPoly {
        HomPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> HomPoly {
        if c.is_zero() {
            return HomPoly::zero(self.nvars);
        }
        HomPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `self += scale * other` (scale 1 when `None`), homogeneity assumed.
    pub(crate) fn add_scaled_assign(&mut self, other: &HomPoly, scale: Option<&Scalar>) {
        for (m, c) in &other.terms {
            let c = match scale {
                Some(s) => c * s,
                None => c.clone(),
            };
            match self.terms.get_mut(m) {
                Some(existing) => {
                    let sum = &*existing + &c;
                    if sum.is_zero() {
                        self.terms.remove(m);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    if !c.is_zero() {
                        self.terms.insert(m.clone(), c);
                    }
                }
            }
        }
    }

    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &HomPoly) -> Option<HomPoly> {
        let (lm, lc) = divisor.leading()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = HomPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let q = HomPoly::monomial(m.div(lm), &c * &lc_inv);
            rem.add_scaled_assign(&q.mul(divisor), Some(&-c.domain().one()));
            quot.add_scaled_assign(&q, None);
        }
        Some(quot)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars, "point arity");
        let domain = point
            .first()
            .map(Scalar::domain)
            .or_else(|| self.terms.values().next().map(Scalar::domain))
            .unwrap_or(Domain::Rational);
        let mut acc = domain.zero();
        for (m, c) in &self.terms {
            let mut t = domain.reduce(c).expect("coefficient reduces into point domain");
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Numeric evaluation at a complex point.
    pub fn eval_complex(&self, point: &[nalgebra::Complex<f64>]) -> nalgebra::Complex<f64> {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(nalgebra::Complex::new(c.to_f64(), 0.0), |acc, (&e, x)| {
                        acc * x.powu(e)
                    })
            })
            .sum()
    }

    /// Map coefficients into `domain`.
    pub fn reduce(&self, domain: Domain) -> Result<HomPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), domain.reduce(c)?)))
            .collect::<Result<Vec<_>>>()?;
        HomPoly::from_terms(self.nvars, terms)
    }

    /// Random homogeneous polynomial of degree `deg` (dense support).
    pub fn random<R: Rng + ?Sized>(nvars: usize, deg: u32, domain: Domain, rng: &mut R, bound: i64) -> HomPoly {
        let terms = monomials_of_degree(nvars, deg)
            .into_iter()
            .map(|m| (m, domain.random(rng, bound)));
        HomPoly::from_terms(nvars, terms).expect("single degree")
    }

    /// Canonical text form with the given variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let mono = fmt_monomial(m, names);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    if abs.as_rational().is_some_and(|q| !q.is_integer()) {
                        out.push('*');
                    }
                }
                out.push_str(&mono);
            }
        }
        out
    }
}

pub fn default_names(nvars: usize) -> Vec<String> {
    (0..nvars).map(|i| format!("x{i}")).collect()
}

/// Juxtaposed variables with `^` powers; names longer than one character
/// are separated by `*`.
fn fmt_monomial(m: &Monomial, names: &[String]) -> String {
    let multi = names.iter().any(|n| n.chars().count() > 1);
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .collect();
    parts.join(if multi { "*" } else { "" })
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&default_names(self.nvars)))
    }
}
