use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u64 = 32003;

/// Coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

impl Domain {
    /// Prime field `F_p`; `p` must be an odd prime below `2^31`.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) || p >= 1 << 31 {
            return Err(Error::Domain(format!("{p} is not an odd prime below 2^31")));
        }
        Ok(Domain::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Domain::Rational => Scalar::Rational(BigRational::zero()),
            Domain::Prime(p) => Scalar::Mod { value: 0, prime: p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Domain::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            Domain::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u64,
                prime: p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Domain::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Domain::Prime(p) => Scalar::Mod {
                value: v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits"),
                prime: p,
            },
        }
    }

    /// Image of a rational; fails when the denominator vanishes mod `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            Domain::Rational => Ok(Scalar::Rational(q.clone())),
            Domain::Prime(p) => {
                let den = self.from_bigint(q.denom());
                let inv = den.inv().ok_or_else(|| {
                    Error::Domain(format!("denominator of {q} vanishes mod {p}"))
                })?;
                Ok(&self.from_bigint(q.numer()) * &inv)
            }
        }
    }

    /// Uniform element of `F_p`, or an integer in `[-bound, bound]` over `Q`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        match *self {
            Domain::Rational => self.from_i64(rng.gen_range(-bound..=bound)),
            Domain::Prime(p) => Scalar::Mod {
                value: rng.gen_range(0..p),
                prime: p,
            },
        }
    }

    /// Reduce a rational scalar into this domain.
    pub fn reduce(&self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (_, Scalar::Rational(q)) => self.from_rational(q),
            (Domain::Prime(p), Scalar::Mod { prime, .. }) if p == prime => Ok(s.clone()),
            _ => Err(Error::Domain(format!("cannot map {s} into {self}"))),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "QQ"),
            Domain::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element: a normalized rational or a residue mod `prime`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, prime: u64 },
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Mod { prime, .. } => Domain::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, prime } => Scalar::Mod {
                value: mod_pow(*value, prime - 2, *prime),
                prime: *prime,
            },
        })
    }

    /// Whether the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Mod { value, prime } => *value > prime / 2,
        }
    }

    /// Approximate value; residues use their symmetric representative.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => {
                q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
            }
            Scalar::Mod { value, prime } => {
                if *value > prime / 2 {
                    *value as f64 - *prime as f64
                } else {
                    *value as f64
                }
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar domain mismatch: {} vs {}", a.domain(), b.domain())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) if p == q => {
                Scalar::Mod { value: (a + b) % p, prime: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) if p == q => {
                Scalar::Mod { value: a * b % p, prime: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, prime } => Scalar::Mod {
                value: (prime - value) % prime,
                prime: *prime,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Mod { value, prime } => {
                if *value > prime / 2 {
                    write!(f, "-{}", prime - value)
                } else {
                    write!(f, "{value}")
                }
            }
        }
    }
}
