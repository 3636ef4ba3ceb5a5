//! Dense linear algebra on evaluated matrices: exact rank over `Q` and
//! `F_p`, numeric rank from singular values, and polynomial roots from a
//! balanced companion matrix.

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::polyring::Scalar;

pub type C64 = Complex<f64>;

/// Exact rank of a matrix of scalars from a single domain.
pub fn rank_exact(m: &[Vec<Scalar>]) -> usize {
    let Some(first) = m.iter().flatten().next() else {
        return 0;
    };
    match first {
        Scalar::Mod { prime, .. } => rank_mod_p(m, *prime),
        Scalar::Rational(_) => {
            let ints: Vec<Vec<BigInt>> = m
                .iter()
                .map(|row| {
                    let qs: Vec<_> = row
                        .iter()
                        .map(|s| s.as_rational().expect("single domain").clone())
                        .collect();
                    let lcm = qs
                        .iter()
                        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                    qs.iter()
                        .map(|q| q.numer() * (&lcm / q.denom()))
                        .collect()
                })
                .collect();
            rank_bareiss(ints)
        }
    }
}

fn rank_mod_p(m: &[Vec<Scalar>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| match s {
                    Scalar::Mod { value, .. } => *value,
                    Scalar::Rational(_) => panic!("mixed domains in rank computation"),
                })
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: u64| -> u64 {
        let mut acc = 1u64;
        let (mut b, mut e) = (x % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let pinv = inv(a[rank][c]);
        for r in rank + 1..rows {
            if a[r][c] == 0 {
                continue;
            }
            let f = a[r][c] * pinv % p;
            for k in c..cols {
                let sub = f * a[rank][k] % p;
                a[r][k] = (a[r][k] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Fraction-free elimination over the integers.
pub fn rank_bareiss(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let num = &a[r][k] * &a[rank][c] - &a[r][c] * &a[rank][k];
                a[r][k] = num / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Determinant over `F_p` or `Q` (used by oracle-style checks).
pub fn is_singular_exact(m: &[Vec<Scalar>]) -> bool {
    rank_exact(m) < m.len()
}

/// Numeric rank decision.
#[derive(Clone, Debug, Serialize)]
pub struct NumericRank {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub threshold: f64,
    /// The smallest accepted and largest rejected singular values are
    /// within a factor 100 of each other.
    pub ill_conditioned: bool,
}

/// Count singular values above `rel_tol · σ_max · max(rows, cols)`.
pub fn numeric_rank(m: &DMatrix<C64>, rel_tol: f64) -> NumericRank {
    if m.nrows() == 0 || m.ncols() == 0 {
        return NumericRank {
            rank: 0,
            singular_values: vec![],
            threshold: 0.0,
            ill_conditioned: false,
        };
    }
    let sv = m.clone().singular_values();
    let mut svals: Vec<f64> = sv.iter().copied().collect();
    svals.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    let smax = svals[0];
    let threshold = rel_tol * smax * m.nrows().max(m.ncols()) as f64;
    let rank = svals.iter().filter(|&&s| s > threshold).count();
    let ill_conditioned = rank > 0
        && rank < svals.len()
        && svals[rank - 1] < 100.0 * svals[rank].max(f64::MIN_POSITIVE);
    NumericRank {
        rank,
        singular_values: svals,
        threshold,
        ill_conditioned,
    }
}

/// Parlett–Reinsch balancing by powers of two.
fn balance(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    let radix = 2.0f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= radix * radix;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Roots of `Σ coeffs[k] t^k` (real coefficients, highest one nonzero),
/// via eigenvalues of the balanced companion matrix followed by a few
/// Newton steps on the original polynomial.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<C64> {
    let deg = coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0);
    if deg == 0 {
        return vec![];
    }
    let lead = coeffs[deg];
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -coeffs[i] / lead;
    }
    balance(&mut comp);
    let mut roots: Vec<C64> = comp.complex_eigenvalues().iter().copied().collect();
    let eval = |z: C64| -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &c in coeffs[..=deg].iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            let cand = *r - step;
            if eval(cand).0.norm() <= p.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Domain;

    fn mat(domain: Domain, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| domain.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn exact_ranks() {
        let rows: &[&[i64]] = &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]];
        assert_eq!(rank_exact(&mat(Domain::Rational, rows)), 2);
        assert_eq!(rank_exact(&mat(Domain::Prime(7), rows)), 2);
        // rank drops mod 5: det = 5
        let r2: &[&[i64]] = &[&[1, 2], &[3, 11]];
        assert_eq!(rank_exact(&mat(Domain::Rational, r2)), 2);
        assert_eq!(rank_exact(&mat(Domain::Prime(5), r2)), 1);
        assert_eq!(rank_exact(&[]), 0);
    }

    #[test]
    fn rational_entries() {
        let q = |a: i64, b: i64| Scalar::Rational(num_rational::BigRational::new(a.into(), b.into()));
        let m = vec![vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 1)]];
        assert_eq!(rank_exact(&m), 1);
        assert!(is_singular_exact(&m));
    }

    #[test]
    fn numeric_rank_drops() {
        let m = DMatrix::from_fn(3, 3, |i, j| C64::new((i + j) as f64, 0.0));
        let r = numeric_rank(&m, 1e-8);
        assert_eq!(r.rank, 2);
        assert!(!r.ill_conditioned);
    }

    #[test]
    fn roots_of_unity() {
        let roots = polynomial_roots(&[-1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(roots.len(), 5);
        for z in roots {
            assert!((z.norm() - 1.0).abs() < 1e-10);
            assert!((z.powu(5) - C64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn roots_with_wide_scale() {
        // (t - 1e-3)(t - 1)(t - 1e3)
        let roots = polynomial_roots(&[-1.0, 1001.001, -1001.001, 1.0]);
        let mut re: Vec<f64> = roots.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in re.iter().zip([1e-3, 1.0, 1e3]) {
            assert!((got - want).abs() < 1e-9 * want.max(1.0), "{got} vs {want}");
        }
    }
}
