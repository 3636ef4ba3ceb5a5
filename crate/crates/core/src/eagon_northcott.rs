//! Eagon–Northcott complexes of `(k0+1) × (k0+n-1)` matrices of linear
//! forms, resolving the ideal of maximal minors.
//!
//! Basis of `E_i` (twist `k0+i`): pairs `(S, m)` with `S` a size-`(k0+i)`
//! column subset in lexicographic order and `m` a degree-`(i-1)` monomial
//! in the `k0+1` row-dual generators, in descending graded-lex order.

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinat::{binomial, factorial};
use crate::complexes::{check_complex, FreeComplex};
use crate::error::{Error, Result};
use crate::polyring::poly::default_names;
use crate::polyring::{determinant, monomials_of_degree, subsets, Domain, GradedMatrix, HomPoly, Monomial};
use crate::shapes::TwistMult;

/// Coefficient bound for random linear forms over `Q`.
const RANDOM_COEFF_BOUND: i64 = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ENInput {
    n: u32,
    k0: u64,
    phi: GradedMatrix,
}

impl ENInput {
    pub fn new(n: u32, k0: u64, phi: GradedMatrix) -> Result<Self> {
        if n < 3 || k0 < 1 {
            return Err(Error::InvalidArgument(format!("need n >= 3 and k0 >= 1, got n = {n}, k0 = {k0}")));
        }
        let (rows, cols) = ((k0 + 1) as usize, (k0 + n as u64 - 1) as usize);
        if phi.rows() != rows || phi.cols() != cols {
            return Err(Error::InvalidArgument(format!(
                "phi must be {rows} x {cols}, got {} x {}",
                phi.rows(),
                phi.cols()
            )));
        }
        if phi.nvars() != n as usize + 1 {
            return Err(Error::InvalidArgument(format!(
                "phi must be over {} variables, got {}",
                n + 1,
                phi.nvars()
            )));
        }
        if phi.row_twists().iter().any(|&t| t != 0) || phi.col_twists().iter().any(|&t| t != 1) {
            return Err(Error::InvalidArgument("phi entries must all be linear forms".into()));
        }
        Ok(ENInput { n, k0, phi })
    }

    /// Build from plain entries, checking that all are linear.
    pub fn from_entries(n: u32, k0: u64, entries: Vec<Vec<HomPoly>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let phi = GradedMatrix::new(n as usize + 1, vec![0; rows], vec![1; cols], entries)?;
        ENInput::new(n, k0, phi)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k0(&self) -> u64 {
        self.k0
    }

    pub fn phi(&self) -> &GradedMatrix {
        &self.phi
    }

    fn domain(&self) -> Domain {
        self.phi
            .entries()
            .iter()
            .flatten()
            .flat_map(|p| p.terms().map(|(_, c)| c.domain()))
            .next()
            .unwrap_or(Domain::Rational)
    }
}

/// `y_i = C(k0+n-1, k0+i) · C(k0+i-1, i-1)`.
pub fn en_size(n: u32, k0: u64, i: u32) -> BigInt {
    let n = n as u64;
    let i = i as u64;
    binomial(k0 + n - 1, k0 + i) * binomial(k0 + i - 1, i - 1)
}

/// `y_i = (k0+n-1)! / ((k0+i) · k0! · (i-1)! · (n-i-1)!)`.
pub fn en_size_factorial(n: u32, k0: u64, i: u32) -> BigInt {
    let n = n as u64;
    let i = i as u64;
    factorial(k0 + n - 1) / (BigInt::from(k0 + i) * factorial(k0) * factorial(i - 1) * factorial(n - i - 1))
}

/// Ranks `y_1..y_{n-1}` of the Eagon–Northcott complex with their twists.
pub fn en_sizes(n: u32, k0: u64) -> Result<Vec<TwistMult>> {
    if n < 3 || k0 < 1 {
        return Err(Error::InvalidArgument(format!("need n >= 3 and k0 >= 1, got n = {n}, k0 = {k0}")));
    }
    (1..n)
        .map(|i| {
            let y = en_size(n, k0, i);
            let alt = en_size_factorial(n, k0, i);
            if y != alt {
                return Err(Error::Consistency(format!("y_{i}: {y} != {alt}")));
            }
            let mult = u64::try_from(&y).map_err(|_| Error::InvalidArgument(format!("y_{i} = {y} too large")))?;
            Ok(TwistMult {
                twist: (k0 + i as u64) as i64,
                mult,
            })
        })
        .collect()
}

/// Random linear `phi`, deterministic in `seed`.
pub fn random_phi(n: u32, k0: u64, domain: Domain, seed: u64) -> Result<ENInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nvars = n as usize + 1;
    let entries = (0..=k0)
        .map(|_| {
            (0..k0 + n as u64 - 1)
                .map(|_| HomPoly::random(nvars, 1, domain, &mut rng, RANDOM_COEFF_BOUND))
                .collect()
        })
        .collect();
    ENInput::from_entries(n, k0, entries)
}

/// Shifted-coordinate matrix `phi[i][j] = x_{(i+j) mod (n+1)}`. For
/// `k0 = 1` this is the catalecticant of the rational normal curve.
pub fn catalecticant_phi(n: u32, k0: u64, domain: Domain) -> Result<ENInput> {
    let nvars = n as usize + 1;
    let entries = (0..=k0 as usize)
        .map(|i| {
            (0..(k0 + n as u64 - 1) as usize)
                .map(|j| HomPoly::var(nvars, (i + j) % nvars, domain))
                .collect()
        })
        .collect();
    ENInput::from_entries(n, k0, entries)
}

/// Build the Eagon–Northcott complex of `input`. The result is checked to
/// be a complex before it is returned.
pub fn build_en(input: &ENInput) -> Result<FreeComplex> {
    let n = input.n as usize;
    let k0 = input.k0 as usize;
    let nvars = n + 1;
    let rows = k0 + 1;
    let cols = k0 + n - 1;
    let phi = input.phi.entries();
    let domain = input.domain();

    // bases[i] for i = 1..n-1
    let mut bases: Vec<Vec<(Vec<usize>, Monomial)>> = vec![vec![]];
    for i in 1..n {
        let mut b = Vec::new();
        for s in subsets(cols, k0 + i) {
            for m in monomials_of_degree(rows, (i - 1) as u32) {
                b.push((s.clone(), m));
            }
        }
        bases.push(b);
    }
    let mut twists = vec![vec![0i64]];
    for i in 1..n {
        twists.push(vec![(k0 + i) as i64; bases[i].len()]);
    }

    let all_rows: Vec<usize> = (0..rows).collect();
    let minors: Vec<HomPoly> = bases[1]
        .iter()
        .map(|(s, _)| {
            let sub: Vec<Vec<HomPoly>> = all_rows
                .iter()
                .map(|&r| s.iter().map(|&c| phi[r][c].clone()).collect())
                .collect();
            determinant(nvars, sub)
        })
        .collect();
    let mut diffs = vec![GradedMatrix::new(nvars, twists[0].clone(), twists[1].clone(), vec![minors])?];

    for i in 1..n - 1 {
        let index: HashMap<(&[usize], &Monomial), usize> = bases[i]
            .iter()
            .enumerate()
            .map(|(k, (s, m))| ((s.as_slice(), m), k))
            .collect();
        let mut entries = vec![vec![HomPoly::zero(nvars); bases[i + 1].len()]; bases[i].len()];
        for (col, (s, m)) in bases[i + 1].iter().enumerate() {
            for (k, &sk) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&c| c != sk).collect();
                for u in 0..rows {
                    let mu = m.0[u];
                    if mu == 0 {
                        continue;
                    }
                    let mut lowered = m.clone();
                    lowered.0[u] -= 1;
                    let row = index[&(rest.as_slice(), &lowered)];
                    let sign = if k % 2 == 0 { mu as i64 } else { -(mu as i64) };
                    let term = phi[u][sk].scale(&domain.from_i64(sign));
                    entries[row][col] = entries[row][col].add(&term);
                }
            }
        }
        diffs.push(GradedMatrix::new(nvars, twists[i].clone(), twists[i + 1].clone(), entries)?);
    }

    let complex = FreeComplex::new(default_names(nvars), domain, twists, diffs)?;
    let report = check_complex(&complex);
    if !report.pass {
        let first = report.failures().next().map(|f| f.location.clone()).unwrap_or_default();
        return Err(Error::Consistency(format!("Eagon–Northcott composite nonzero at {first}")));
    }
    Ok(complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{binom_dim, genus_bound_pi};
    use crate::complexes::{hilbert_polynomial, probabilistic_exactness};
    use crate::polyring::{parse_matrix, parse_poly};
    use crate::shapes::solve_shape;

    const P: Domain = Domain::Prime(32003);

    #[test]
    fn sizes() {
        let m = |v: Vec<TwistMult>| v.iter().map(|t| t.mult).collect::<Vec<_>>();
        assert_eq!(m(en_sizes(4, 1).unwrap()), vec![6, 8, 3]);
        assert_eq!(m(en_sizes(3, 1).unwrap()), vec![3, 2]);
        assert_eq!(m(en_sizes(4, 2).unwrap()), vec![10, 15, 6]);
        for n in 3..8u32 {
            for k0 in 1..6u64 {
                let y = en_sizes(n, k0).unwrap();
                assert_eq!(BigInt::from(y[n as usize - 2].mult), binomial(k0 + n as u64 - 2, n as u64 - 2));
                let euler: i64 = 1 + y
                    .iter()
                    .enumerate()
                    .map(|(i, t)| if i % 2 == 0 { -(t.mult as i64) } else { t.mult as i64 })
                    .sum::<i64>();
                assert_eq!(euler, 0);
                let s = solve_shape(n, binom_dim(n, k0 as i64)).unwrap();
                for (i, t) in y.iter().enumerate() {
                    assert_eq!(s.block(i + 1), &[*t], "n={n} k0={k0} i={}", i + 1);
                }
            }
        }
    }

    #[test]
    fn twisted_cubic() {
        let names = default_names(4);
        let rows = parse_matrix("[x0, x1, x2]\n[x1, x2, x3]", &names, Domain::Rational).unwrap();
        let c = build_en(&ENInput::from_entries(3, 1, rows).unwrap()).unwrap();
        let want = ["x0x2-x1^2", "x0x3-x1x2", "x1x3-x2^2"];
        for (got, w) in c.generators().iter().zip(want) {
            assert_eq!(*got, parse_poly(w, &names, Domain::Rational).unwrap());
        }
        assert_eq!(c.twists(1), &[2, 2, 2]);
        assert_eq!(c.twists(2), &[3, 3]);
        // minors of d1 give back the generators up to sign
        let d1 = c.differential(1);
        for skip in 0..3 {
            let keep: Vec<usize> = (0..3).filter(|&r| r != skip).collect();
            let minor = d1.minor(&keep, &[0, 1]);
            assert!(c.generators().iter().any(|g| minor == *g || minor == g.neg()), "{skip}");
        }
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_phi(4, 2, P, 7).unwrap(), random_phi(4, 2, P, 7).unwrap());
        assert_ne!(random_phi(4, 2, P, 7).unwrap(), random_phi(4, 2, P, 8).unwrap());
    }

    #[test]
    fn random_en_is_generically_exact() {
        for (n, k0) in [(3u32, 1u64), (3, 2), (4, 1), (4, 2)] {
            let c = build_en(&random_phi(n, k0, P, 3).unwrap()).unwrap();
            let rep = probabilistic_exactness(&c, 5, 1, P).unwrap();
            assert!(rep.pass, "n={n} k0={k0}");
            let d = binom_dim(n, k0 as i64);
            let (dd, g) = hilbert_polynomial(&c.shape().unwrap()).unwrap();
            assert_eq!(dd, d);
            assert_eq!(g, genus_bound_pi(n, d).unwrap());
        }
    }

    #[test]
    fn rational_normal_quartic() {
        let c = build_en(&catalecticant_phi(4, 1, Domain::Rational).unwrap()).unwrap();
        assert!(probabilistic_exactness(&c, 5, 1, P).unwrap().pass);
        assert_eq!(hilbert_polynomial(&c.shape().unwrap()).unwrap(), (4.into(), 0.into()));
    }

    #[test]
    fn repeated_row_is_degenerate() {
        let input = random_phi(4, 1, P, 5).unwrap();
        let mut rows = input.phi().entries().to_vec();
        rows[1] = rows[0].clone();
        let c = build_en(&ENInput::from_entries(4, 1, rows).unwrap()).unwrap();
        assert!(probabilistic_exactness(&c, 5, 1, P).is_err());
    }

    #[test]
    fn rejects_nonlinear() {
        let names = default_names(4);
        let rows = parse_matrix("[x0^2, x1, x2]\n[x1, x2, x3]", &names, Domain::Rational).unwrap();
        assert!(ENInput::from_entries(3, 1, rows).is_err());
    }
}
