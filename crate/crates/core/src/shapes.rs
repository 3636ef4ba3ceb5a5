//! Betti shapes of length-`(n-1)` resolutions and their power-sum invariants.
//!
//! A shape lists, for each homological index `i = 1..n-1`, the twists `a`
//! and multiplicities `m` of the summands `m·O(-a)` of `E_i`. The summand
//! `E_0 = O` is implicit.
//!
//! Power sums use the sign convention
//! `T_p = Σ_i (-1)^(i+1) Σ_{(a,m) ∈ E_i} m·a^p`, for which a curve of
//! degree `d` and arithmetic genus `g` requires
//!
//! * `T_0 = 1`,
//! * `T_p = 0` for `1 <= p <= n-2`,
//! * `T_{n-1} = (-1)^n (n-1)! d`,
//! * `T_n = (-1)^n n! (g - 1 + (n+1) d / 2)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{self, factorial, integral, twist_profile, TwistProfile};
use crate::error::{Error, Result};

/// One summand family `mult · O(-twist)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistMult {
    pub twist: i64,
    pub mult: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Provenance {
    #[default]
    Solved,
    RedundancyAdded,
    Fixture,
    EagonNorthcott,
    /// Read off an explicitly given complex.
    Complex,
}

/// Twists and multiplicities of `E_1, ..., E_{n-1}`.
///
/// Blocks are kept normalized: twists within a block are distinct and
/// listed in decreasing order, and zero multiplicities are dropped.
/// Equality ignores provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BettiShape {
    pub n: u32,
    pub blocks: Vec<Vec<TwistMult>>,
    #[serde(skip)]
    pub provenance: Provenance,
}

impl PartialEq for BettiShape {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.blocks == other.blocks
    }
}
impl Eq for BettiShape {}

fn normalize_block(block: impl IntoIterator<Item = TwistMult>) -> Vec<TwistMult> {
    let mut merged: BTreeMap<i64, u64> = BTreeMap::new();
    for tm in block {
        *merged.entry(tm.twist).or_default() += tm.mult;
    }
    merged
        .into_iter()
        .rev()
        .filter(|&(_, m)| m > 0)
        .map(|(twist, mult)| TwistMult { twist, mult })
        .collect()
}

impl BettiShape {
    /// Build a shape from raw blocks `E_1..E_{n-1}`, normalizing and
    /// checking positivity of twists and weak monotonicity.
    pub fn new(n: u32, blocks: Vec<Vec<TwistMult>>, provenance: Provenance) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("n must be at least 3, got {n}")));
        }
        if blocks.len() != n as usize - 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} blocks E_1..E_{}, got {}",
                n - 1,
                n - 1,
                blocks.len()
            )));
        }
        let shape = BettiShape {
            n,
            blocks: blocks.into_iter().map(normalize_block).collect(),
            provenance,
        };
        shape.check_monotone()?;
        Ok(shape)
    }

    /// Shape from twist lists, one entry per basis element (duplicates are
    /// counted).
    pub fn from_twist_lists(n: u32, lists: &[Vec<i64>], provenance: Provenance) -> Result<Self> {
        let blocks = lists
            .iter()
            .map(|l| l.iter().map(|&twist| TwistMult { twist, mult: 1 }).collect())
            .collect();
        Self::new(n, blocks, provenance)
    }

    fn check_monotone(&self) -> Result<()> {
        for (i, block) in self.blocks.iter().enumerate() {
            if let Some(tm) = block.iter().find(|tm| tm.twist < 1) {
                return Err(Error::Monotonicity(format!(
                    "E_{} carries non-positive twist {}",
                    i + 1,
                    tm.twist
                )));
            }
        }
        for i in 1..self.blocks.len() {
            let (Some(hi), Some(lo)) = (self.max_twist(i), self.min_twist(i + 1)) else {
                continue;
            };
            if lo < hi {
                return Err(Error::Monotonicity(format!(
                    "min twist {lo} of E_{} is below max twist {hi} of E_{i}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Block `E_i`, 1-based.
    pub fn block(&self, i: usize) -> &[TwistMult] {
        &self.blocks[i - 1]
    }

    /// Rank of `E_i` (1-based); `rank(0) = 1`.
    pub fn rank(&self, i: usize) -> u64 {
        if i == 0 {
            1
        } else {
            self.blocks[i - 1].iter().map(|tm| tm.mult).sum()
        }
    }

    pub fn max_twist(&self, i: usize) -> Option<i64> {
        self.block(i).iter().map(|tm| tm.twist).max()
    }

    pub fn min_twist(&self, i: usize) -> Option<i64> {
        self.block(i).iter().map(|tm| tm.twist).min()
    }

    /// Largest twist over all blocks.
    pub fn overall_max_twist(&self) -> i64 {
        self.blocks
            .iter()
            .flatten()
            .map(|tm| tm.twist)
            .max()
            .unwrap_or(0)
    }

    /// Twist list of `E_i` (1-based; `E_0 = [0]`), one entry per basis
    /// element, in block order.
    pub fn twist_list(&self, i: usize) -> Vec<i64> {
        if i == 0 {
            return vec![0];
        }
        self.block(i)
            .iter()
            .flat_map(|tm| std::iter::repeat_n(tm.twist, tm.mult as usize))
            .collect()
    }

    /// `T_p` for `p = 0..=max_p`.
    pub fn power_sums(&self, max_p: u32) -> Vec<BigInt> {
        (0..=max_p)
            .map(|p| {
                self.blocks
                    .iter()
                    .enumerate()
                    .map(|(idx, block)| {
                        let s: BigInt = block
                            .iter()
                            .map(|tm| BigInt::from(tm.mult) * BigInt::from(tm.twist).pow(p))
                            .sum();
                        // E_1 (idx 0) enters with sign +1.
                        if idx % 2 == 0 {
                            s
                        } else {
                            -s
                        }
                    })
                    .sum()
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("shape serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BettiShape = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("shape JSON: {e}")))?;
        BettiShape::new(raw.n, raw.blocks, Provenance::Fixture)
    }
}

impl fmt::Display for BettiShape {
    /// Resolution notation, e.g. `0 -> O(-5) -> 5O(-3) -> 5O(-2) -> O`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0")?;
        for block in self.blocks.iter().rev() {
            let parts: Vec<String> = block
                .iter()
                .map(|tm| {
                    if tm.mult == 1 {
                        format!("O(-{})", tm.twist)
                    } else {
                        format!("{}O(-{})", tm.mult, tm.twist)
                    }
                })
                .collect();
            write!(f, " -> {}", parts.join(" + "))?;
        }
        write!(f, " -> O")
    }
}

/// Power sums with the degree and genus they encode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeInvariants {
    #[serde(serialize_with = "crate::json::ser_big_vec")]
    pub t: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser_big")]
    pub d: BigInt,
    #[serde(serialize_with = "crate::json::ser_big")]
    pub g: BigInt,
}

fn sign_n(n: u32) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// Check the power-sum identities of `shape` and read off `(d, g)`.
///
/// Every violated identity is listed in the error, the first one leading.
pub fn validate_shape(shape: &BettiShape) -> Result<ShapeInvariants> {
    let n = shape.n;
    let t = shape.power_sums(n);
    let mut violations = Vec::new();
    if t[0] != BigInt::from(1) {
        violations.push(format!("T_0 = {} (expected 1)", t[0]));
    }
    for (p, tp) in t.iter().enumerate().take(n as usize - 1).skip(1) {
        if !tp.is_zero() {
            violations.push(format!("T_{p} = {tp} (expected 0)"));
        }
    }
    let fact = factorial(n as u64 - 1);
    let dq = BigRational::new(sign_n(n) * &t[n as usize - 1], fact.clone());
    if !dq.is_integer() || !dq.is_positive() {
        violations.push(format!(
            "T_{} = {} is not (-1)^n (n-1)! d for a positive integer d",
            n - 1,
            t[n as usize - 1]
        ));
    }
    if !violations.is_empty() {
        return Err(Error::ShapeIdentity(violations.join("; ")));
    }
    let d = dq.to_integer();
    // g = (-1)^n T_n / n! + 1 - (n+1) d / 2
    let gq = BigRational::new(sign_n(n) * &t[n as usize], factorial(n as u64))
        + BigRational::from_integer(BigInt::from(1))
        - BigRational::new(BigInt::from(n + 1) * &d, BigInt::from(2));
    let g = integral(&gq, &format!("genus from T_{n}"))
        .map_err(|e| Error::ShapeIdentity(e.to_string()))?;
    Ok(ShapeInvariants { t, d, g })
}

fn mult_from(q: BigRational, what: impl Fn() -> String) -> Result<u64> {
    if !q.is_integer() || q.is_negative() {
        return Err(Error::Consistency(format!(
            "{} = {q} is not a nonnegative integer",
            what()
        )));
    }
    q.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Consistency(format!("{} = {q} overflows u64", what())))
}

/// Solve the Vandermonde system for the pivot `i0` of `profile`.
fn shape_for_pivot(profile: &TwistProfile, i0: usize) -> Result<BettiShape> {
    let n = profile.n as usize;
    let k0 = profile.k0 as i64;
    let fact = BigRational::from_integer(factorial(n as u64 - 1));
    let d = BigRational::from_integer(profile.d.clone());
    // coefficient (n-1)!/Δ_i
    let weight = |i: usize| fact.clone() / BigRational::from_integer(profile.delta_at(i).clone());

    let mut blocks = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut block = Vec::new();
        if i <= i0 {
            let q = weight(i) * (profile.d_crit_at(i) - &d);
            let mult = mult_from(q, || format!("multiplicity of O(-{}) in E_{i}", k0 + i as i64))?;
            block.push(TwistMult { twist: k0 + i as i64, mult });
        }
        if i >= i0 {
            let q = weight(i + 1) * (&d - profile.d_crit_at(i + 1));
            let mult = mult_from(q, || {
                format!("multiplicity of O(-{}) in E_{i}", k0 + i as i64 + 1)
            })?;
            block.push(TwistMult { twist: k0 + i as i64 + 1, mult });
        }
        blocks.push(block);
    }
    BettiShape::new(profile.n, blocks, Provenance::Solved)
}

/// The resolution shape of an acm ordinary curve of degree `d` in `P^n`,
/// with twists drawn from `k0+1..=k0+n`.
pub fn solve_shape(n: u32, d: impl Into<BigInt>) -> Result<BettiShape> {
    let profile = twist_profile(n, d)?;
    shape_for_pivot(&profile, profile.i0)
}

/// Add `u` copies of `O(-twist)` to both `E_{i+1}` and `E_i`.
pub fn add_redundancy(shape: &BettiShape, i: usize, twist: i64, u: u64) -> Result<BettiShape> {
    let n = shape.n as usize;
    if i < 1 || i > n - 2 {
        return Err(Error::InvalidArgument(format!(
            "redundancy index must lie in 1..={}, got {i}",
            n - 2
        )));
    }
    if u == 0 {
        return Err(Error::InvalidArgument("redundancy count u must be positive".into()));
    }
    let mut blocks = shape.blocks.clone();
    blocks[i - 1].push(TwistMult { twist, mult: u });
    blocks[i].push(TwistMult { twist, mult: u });
    BettiShape::new(shape.n, blocks, Provenance::RedundancyAdded)
}

/// The `n = 3` shapes of a Hilbert–Burch matrix `M: E_2 -> E_1`, split by
/// `r = d - c(3,k0)` and `t = c(3,k0+1) - d`.
pub fn shape3(d: impl Into<BigInt>) -> Result<BettiShape> {
    let d = d.into();
    let k0 = combinat::caliber(3, d.clone())? as i64;
    let r = &d - combinat::binom_dim(3, k0);
    let t = combinat::binom_dim(3, k0 + 1) - &d;
    if &r + &t != BigInt::from(k0 + 2) {
        return Err(Error::Consistency(format!("r + t = {} != k0 + 2", &r + &t)));
    }
    let to_u = |x: BigInt| {
        x.to_u64()
            .ok_or_else(|| Error::Consistency(format!("negative multiplicity {x}")))
    };
    let one = BigInt::from(1);
    let (e1, e2) = if t >= &r + &one {
        (
            vec![TwistMult { twist: k0 + 1, mult: to_u(t.clone())? }],
            vec![
                TwistMult { twist: k0 + 3, mult: to_u(r.clone())? },
                TwistMult { twist: k0 + 2, mult: to_u(&t - &r - &one)? },
            ],
        )
    } else {
        (
            vec![
                TwistMult { twist: k0 + 2, mult: to_u(&r + &one - &t)? },
                TwistMult { twist: k0 + 1, mult: to_u(t.clone())? },
            ],
            vec![TwistMult { twist: k0 + 3, mult: to_u(r.clone())? }],
        )
    };
    BettiShape::new(3, vec![e1, e2], Provenance::Solved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{binom_dim, genus_bound_pi};

    fn tm(twist: i64, mult: u64) -> TwistMult {
        TwistMult { twist, mult }
    }

    fn shape(n: u32, blocks: Vec<Vec<(i64, u64)>>) -> BettiShape {
        BettiShape::new(
            n,
            blocks
                .into_iter()
                .map(|b| b.into_iter().map(|(a, m)| tm(a, m)).collect())
                .collect(),
            Provenance::Fixture,
        )
        .unwrap()
    }

    #[test]
    fn solve_ex1() {
        let s = solve_shape(4, 5).unwrap();
        assert_eq!(s, shape(4, vec![vec![(2, 5)], vec![(3, 5)], vec![(5, 1)]]));
        assert_eq!(s.to_string(), "0 -> O(-5) -> 5O(-3) -> 5O(-2) -> O");
    }

    #[test]
    fn solve_ex2_and_calibrated() {
        assert_eq!(
            solve_shape(4, 15).unwrap(),
            shape(4, vec![vec![(3, 5)], vec![(5, 9)], vec![(6, 5)]])
        );
        assert_eq!(
            solve_shape(4, 4).unwrap(),
            shape(4, vec![vec![(2, 6)], vec![(3, 8)], vec![(4, 3)]])
        );
    }

    #[test]
    fn redundancy_matches_ex2() {
        let s = add_redundancy(&solve_shape(4, 15).unwrap(), 1, 4, 2).unwrap();
        assert_eq!(
            s,
            shape(4, vec![vec![(4, 2), (3, 5)], vec![(5, 9), (4, 2)], vec![(6, 5)]])
        );
        assert_eq!(s.provenance, Provenance::RedundancyAdded);
        let inv = validate_shape(&s).unwrap();
        assert_eq!((inv.d, inv.g), (15.into(), 16.into()));
    }

    #[test]
    fn redundancy_rejects_bad_input() {
        let s = solve_shape(4, 15).unwrap();
        // twist 2 below E_1's twist 3 would push E_2 under E_1
        assert!(matches!(add_redundancy(&s, 1, 2, 1), Err(Error::Monotonicity(_))));
        assert!(add_redundancy(&s, 3, 6, 1).is_err());
        assert!(add_redundancy(&s, 0, 3, 1).is_err());
        assert!(add_redundancy(&s, 1, 4, 0).is_err());
    }

    #[test]
    fn redundancies_commute() {
        let s = solve_shape(4, 15).unwrap();
        let a = add_redundancy(&add_redundancy(&s, 1, 4, 2).unwrap(), 2, 5, 1).unwrap();
        let b = add_redundancy(&add_redundancy(&s, 2, 5, 1).unwrap(), 1, 4, 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn validate_ex1_power_sums() {
        let inv = validate_shape(&solve_shape(4, 5).unwrap()).unwrap();
        assert_eq!(inv.t, [1, 0, 0, 30, 300].map(BigInt::from).to_vec());
        assert_eq!((inv.d, inv.g), (5.into(), 1.into()));
    }

    #[test]
    fn validate_odd_n_sign() {
        // twisted cubic: T_2 = 12 - 18 = -6 = (-1)^3 2! 3
        let inv = validate_shape(&solve_shape(3, 3).unwrap()).unwrap();
        assert_eq!(inv.t, [1, 0, -6, -30].map(BigInt::from).to_vec());
        assert_eq!((inv.d, inv.g), (3.into(), 0.into()));
    }

    #[test]
    fn validate_reports_t0() {
        let bad = shape(4, vec![vec![(2, 6)], vec![(3, 5)], vec![(5, 1)]]);
        match validate_shape(&bad) {
            Err(Error::ShapeIdentity(msg)) => assert!(msg.starts_with("T_0"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape3_cases() {
        assert_eq!(shape3(3).unwrap(), shape(3, vec![vec![(2, 3)], vec![(3, 2)]]));
        assert_eq!(shape3(4).unwrap(), shape(3, vec![vec![(2, 2)], vec![(4, 1)]]));
        assert_eq!(shape3(5).unwrap(), shape(3, vec![vec![(3, 2), (2, 1)], vec![(4, 2)]]));
        for d in 3..=200 {
            assert_eq!(shape3(d).unwrap(), solve_shape(3, d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn endpoint_pivot_choice_is_irrelevant() {
        for n in 3..=7u32 {
            for k0 in 1..=4i64 {
                let lo = binom_dim(n, k0).to_i64().unwrap();
                let hi = binom_dim(n, k0 + 1).to_i64().unwrap();
                for d in lo..hi {
                    let p = twist_profile(n, d).unwrap();
                    let dq = BigRational::from_integer(d.into());
                    if p.i0 + 1 < n as usize && p.d_crit_at(p.i0 + 1) == &dq {
                        let alt = shape_for_pivot(&p, p.i0 + 1).unwrap();
                        assert_eq!(alt, shape_for_pivot(&p, p.i0).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let s = solve_shape(4, 5).unwrap();
        let j = s.to_json();
        assert_eq!(
            j,
            r#"{"n":4,"blocks":[[{"twist":2,"mult":5}],[{"twist":3,"mult":5}],[{"twist":5,"mult":1}]]}"#
        );
        assert_eq!(BettiShape::from_json(&j).unwrap(), s);
    }

    #[test]
    fn sweep_small() {
        for n in 3..=5u32 {
            for d in n as i64..60 {
                let s = solve_shape(n, d).unwrap();
                let inv = validate_shape(&s).unwrap();
                assert_eq!(inv.d, d.into());
                assert_eq!(inv.g, genus_bound_pi(n, d).unwrap());
            }
        }
    }
}
