//! Exact numerology of `(n, d)`: binomial dimensions, the caliber `k0`,
//! the genus bound `π'(n, d)`, the critical degrees and the twist profile.
//!
//! Everything here is exact (`BigInt` / `BigRational`); no floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// `c(n, h) = (n-1+h)! / ((n-1)! h!)`, the number of degree-`h` monomials in
/// `n` variables. Extended by zero for negative `h`.
pub fn binom_dim(n: u32, h: i64) -> BigInt {
    assert!(n >= 1, "binom_dim requires n >= 1");
    if h < 0 {
        return BigInt::zero();
    }
    binomial(n as u64 - 1 + h as u64, h as u64)
}

/// `binom_dim` as a `usize`, for sizing matrices.
pub fn binom_dim_usize(n: u32, h: i64) -> usize {
    binom_dim(n, h)
        .to_usize()
        .expect("monomial count does not fit in usize")
}

fn check_args(n: u32, d: &BigInt) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "ambient dimension must be at least 3, got {n}"
        )));
    }
    if *d < BigInt::from(n) {
        return Err(Error::DegreeTooSmall {
            n: n as u64,
            d: d.to_string(),
        });
    }
    Ok(())
}

/// The unique `k0 >= 1` with `c(n, k0) <= d < c(n, k0 + 1)`.
pub fn caliber(n: u32, d: impl Into<BigInt>) -> Result<u64> {
    let d = d.into();
    check_args(n, &d)?;
    let mut k = 1u64;
    while binom_dim(n, k as i64 + 1) <= d {
        k += 1;
    }
    Ok(k)
}

/// `π'(n, d)` as the sum `Σ_{h=1}^{k0} (d - c(n, h))`.
pub fn genus_bound_sum(n: u32, d: impl Into<BigInt>) -> Result<BigInt> {
    let d = d.into();
    let k0 = caliber(n, d.clone())?;
    Ok((1..=k0).map(|h| &d - binom_dim(n, h as i64)).sum())
}

/// `π'(n, d)` in closed form `k0·d - c(n+1, k0) + 1`.
pub fn genus_bound_closed(n: u32, d: impl Into<BigInt>) -> Result<BigInt> {
    let d = d.into();
    let k0 = caliber(n, d.clone())?;
    Ok(BigInt::from(k0) * &d - binom_dim(n + 1, k0 as i64) + 1)
}

/// The genus bound `π'(n, d)`. Both the summation and the closed form are
/// evaluated; a disagreement is reported as a consistency failure.
pub fn genus_bound_pi(n: u32, d: impl Into<BigInt>) -> Result<BigInt> {
    let d = d.into();
    let sum = genus_bound_sum(n, d.clone())?;
    let closed = genus_bound_closed(n, d.clone())?;
    if sum != closed {
        return Err(Error::Consistency(format!(
            "pi'({n},{d}): summation {sum} != closed form {closed}"
        )));
    }
    Ok(sum)
}

/// Numerology of a pair `(n, d)`.
///
/// Sequences are stored 0-based: `b[0]` is `b_1`, `d_crit[0]` is `d_1`, and so
/// on. `i0` is kept 1-based, matching the block index `E_{i0}` it selects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistProfile {
    pub n: u32,
    pub d: BigInt,
    pub k0: u64,
    /// `b_i = k0 + i`, `i = 1..=n`.
    pub b: Vec<u64>,
    /// Critical degrees `d_1 > d_2 > ... > d_n`.
    pub d_crit: Vec<BigRational>,
    /// `Δ_i = (i-1)! (n-i)!`.
    pub delta: Vec<BigInt>,
    pub sigma1: BigInt,
    pub sigman: BigInt,
    /// Pivot index in `1..=n-1` with `d_{i0+1} <= d < d_{i0}`.
    pub i0: usize,
}

impl TwistProfile {
    /// `d_i` for 1-based `i`.
    pub fn d_crit_at(&self, i: usize) -> &BigRational {
        &self.d_crit[i - 1]
    }

    /// `Δ_i` for 1-based `i`.
    pub fn delta_at(&self, i: usize) -> &BigInt {
        &self.delta[i - 1]
    }

    /// Whether `d = c(n, k0)`.
    pub fn is_calibrated(&self) -> bool {
        self.d == binom_dim(self.n, self.k0 as i64)
    }
}

/// Compute the full [`TwistProfile`] of `(n, d)`.
pub fn twist_profile(n: u32, d: impl Into<BigInt>) -> Result<TwistProfile> {
    let d = d.into();
    let k0 = caliber(n, d.clone())?;
    let nn = n as u64;
    let b: Vec<u64> = (1..=nn).map(|i| k0 + i).collect();
    let fact_nm1 = factorial(nn - 1);
    let d_crit: Vec<BigRational> = (0..b.len())
        .map(|skip| {
            let prod: BigInt = b
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &bj)| BigInt::from(bj))
                .product();
            BigRational::new(prod, fact_nm1.clone())
        })
        .collect();
    let delta: Vec<BigInt> = (1..=nn)
        .map(|i| factorial(i - 1) * factorial(nn - i))
        .collect();
    let sigma1: BigInt = b.iter().map(|&x| BigInt::from(x)).sum();
    let sigman: BigInt = b.iter().map(|&x| BigInt::from(x)).product();

    let dq = BigRational::from_integer(d.clone());
    let i0 = (1..n as usize)
        .find(|&i| d_crit[i] <= dq && dq < d_crit[i - 1])
        .ok_or_else(|| {
            Error::Consistency(format!("no pivot index for d = {d} in [d_n, d_1)"))
        })?;

    Ok(TwistProfile {
        n,
        d,
        k0,
        b,
        d_crit,
        delta,
        sigma1,
        sigman,
        i0,
    })
}

/// Genus read off the twists `b_i`:
/// `g = (σ1/n - (n+1)/2)·d - σn/n! + 1`.
///
/// Fails when the rational expression is not an integer.
pub fn genus_from_twists(profile: &TwistProfile) -> Result<BigInt> {
    let n = BigInt::from(profile.n);
    let d = BigRational::from_integer(profile.d.clone());
    let slope = BigRational::new(profile.sigma1.clone(), n.clone())
        - BigRational::new(&n + 1, BigInt::from(2));
    let g = slope * d
        - BigRational::new(profile.sigman.clone(), factorial(profile.n as u64))
        + BigRational::one();
    if !g.is_integer() {
        return Err(Error::Consistency(format!(
            "genus from twists is not integral: {g}"
        )));
    }
    Ok(g.to_integer())
}

/// Exact integer value of a rational, or a consistency error naming `what`.
pub(crate) fn integral(q: &BigRational, what: &str) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Consistency(format!("{what} = {q} is not an integer")))
    }
}

/// Greatest common divisor of a list of integers (0 for an empty list).
pub(crate) fn gcd_all<I: IntoIterator<Item = i64>>(it: I) -> i64 {
    it.into_iter().fold(0i64, |acc, x| acc.gcd(&x)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn binom_dim_values() {
        assert_eq!(binom_dim(3, 2), 6.into());
        assert_eq!(binom_dim(4, 2), 10.into());
        for n in 1..8 {
            assert_eq!(binom_dim(n, 0), 1.into());
            assert_eq!(binom_dim(n, -1), 0.into());
        }
        let p3: Vec<BigInt> = (1..=5).map(|h| binom_dim(3, h)).collect();
        assert_eq!(p3, [3, 6, 10, 15, 21].map(BigInt::from));
        let p4: Vec<BigInt> = (1..=5).map(|h| binom_dim(4, h)).collect();
        assert_eq!(p4, [4, 10, 20, 35, 56].map(BigInt::from));
    }

    #[test]
    fn caliber_values() {
        assert_eq!(caliber(3, 6).unwrap(), 2);
        assert_eq!(caliber(4, 5).unwrap(), 1);
        for n in 3..7u32 {
            for k in 1..6 {
                assert_eq!(caliber(n, binom_dim(n, k)).unwrap(), k as u64);
            }
        }
        assert!(matches!(caliber(4, 3), Err(Error::DegreeTooSmall { .. })));
        assert!(caliber(2, 5).is_err());
    }

    #[test]
    fn genus_bound_values() {
        assert_eq!(genus_bound_pi(3, 3).unwrap(), 0.into());
        assert_eq!(genus_bound_pi(4, 5).unwrap(), 1.into());
        assert_eq!(genus_bound_pi(4, 15).unwrap(), 16.into());
    }

    #[test]
    fn profile_4_15() {
        let p = twist_profile(4, 15).unwrap();
        assert_eq!(p.k0, 2);
        assert_eq!(p.b, vec![3, 4, 5, 6]);
        assert_eq!(p.d_crit, vec![q(20, 1), q(15, 1), q(12, 1), q(10, 1)]);
        assert_eq!(p.i0, 1);
        // Closed forms for n = 4 written out per index.
        let k = 2i64;
        let closed = [
            q((k + 2) * (k + 3) * (k + 4), 6),
            q((k + 1) * (k + 3) * (k + 4), 6),
            q((k + 1) * (k + 2) * (k + 4), 6),
            q((k + 1) * (k + 2) * (k + 3), 6),
        ];
        assert_eq!(p.d_crit, closed.to_vec());
    }

    #[test]
    fn profile_4_5() {
        let p = twist_profile(4, 5).unwrap();
        assert_eq!(p.k0, 1);
        assert_eq!(p.d_crit, vec![q(10, 1), q(20, 3), q(5, 1), q(4, 1)]);
        assert_eq!(p.i0, 2);
        assert_eq!(p.sigma1, 14.into());
        assert_eq!(p.sigman, 120.into());
        assert_eq!(p.delta, [6, 2, 2, 6].map(BigInt::from).to_vec());
    }

    #[test]
    fn calibrated_endpoint_pivot() {
        for n in 3..8u32 {
            for k in 1..5 {
                let p = twist_profile(n, binom_dim(n, k)).unwrap();
                assert_eq!(p.i0, n as usize - 1);
                assert_eq!(
                    p.d_crit_at(n as usize),
                    &BigRational::from_integer(p.d.clone())
                );
                assert!(p.is_calibrated());
            }
        }
    }

    #[test]
    fn genus_from_twists_values() {
        for (d, g) in [(4, 0), (5, 1), (15, 16)] {
            let p = twist_profile(4, d).unwrap();
            assert_eq!(genus_from_twists(&p).unwrap(), g.into());
        }
        let mut p = twist_profile(4, 5).unwrap();
        p.sigman += 1;
        assert!(genus_from_twists(&p).is_err());
    }

    #[test]
    fn profile_invariants_sweep() {
        for n in 3..=6u32 {
            for d in n as i64..200 {
                let p = twist_profile(n, d).unwrap();
                let nn = n as usize;
                assert_eq!(p.d_crit[0], BigRational::from_integer(binom_dim(n, p.k0 as i64 + 1)));
                assert_eq!(p.d_crit[nn - 1], BigRational::from_integer(binom_dim(n, p.k0 as i64)));
                assert!(p.d_crit.windows(2).all(|w| w[0] > w[1]));
                let sigma1 = BigInt::from(n) * p.k0 + BigInt::from(n * (n + 1) / 2);
                assert_eq!(p.sigma1, sigma1);
                assert_eq!(genus_from_twists(&p).unwrap(), genus_bound_pi(n, d).unwrap());
            }
        }
    }

    #[test]
    fn gcd_helper() {
        assert_eq!(gcd_all([4, 6, -10]), 2);
        assert_eq!(gcd_all([]), 0);
        assert!(integral(&q(3, 2), "x").is_err());
    }
}
