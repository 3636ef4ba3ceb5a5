//! Monomial curves `(t, s) ↦ (t^{α_0} s^{β_0} : ... : t^{α_n} s^{β_n})`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinat::gcd_all;
use crate::complexes::{Check, Failure, VerificationReport};
use crate::error::{Error, Result};
use crate::linalg::{polynomial_roots, C64};
use crate::polyring::{HomPoly, Scalar};

/// Relative distance under which two roots count as one repeated root.
pub const ROOT_MERGE_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialCurve {
    n: u32,
    e: u32,
    exps: Vec<(u32, u32)>,
}

impl MonomialCurve {
    pub fn new(exps: Vec<(u32, u32)>) -> Result<Self> {
        if exps.len() < 4 {
            return Err(Error::InvalidArgument(format!(
                "need at least 4 coordinates (n >= 3), got {}",
                exps.len()
            )));
        }
        let e = exps[0].0 + exps[0].1;
        if let Some(bad) = exps.iter().find(|(a, b)| a + b != e) {
            return Err(Error::InvalidArgument(format!(
                "exponent pair {bad:?} does not sum to e = {e}"
            )));
        }
        for (j, p) in exps.iter().enumerate() {
            if exps[..j].contains(p) {
                return Err(Error::InvalidArgument(format!("exponent pair {p:?} repeated")));
            }
        }
        let a0 = exps[0].0 as i64;
        let g = gcd_all(exps.iter().map(|&(a, _)| a as i64 - a0));
        if g != 1 {
            return Err(Error::InvalidArgument(format!(
                "exponent differences have gcd {g}; the parametrization is not birational"
            )));
        }
        Ok(MonomialCurve {
            n: exps.len() as u32 - 1,
            e,
            exps,
        })
    }

    /// Parse `curve: n=4 e=5 exps=(2,3)(3,2)(4,1)(5,0)(0,5)`.
    pub fn parse(line: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Fixture(format!("curve line '{}': {msg}", line.trim()));
        let body = line.trim().strip_prefix("curve:").ok_or_else(|| bad("missing 'curve:'"))?;
        let (mut n, mut e, mut exps) = (None, None, None);
        for field in body.split_whitespace() {
            let (k, v) = field.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match k {
                "n" => n = Some(v.parse::<u32>().map_err(|_| bad("bad n"))?),
                "e" => e = Some(v.parse::<u32>().map_err(|_| bad("bad e"))?),
                "exps" => {
                    let inner = v
                        .strip_prefix('(')
                        .and_then(|v| v.strip_suffix(')'))
                        .ok_or_else(|| bad("exps must be (a,b)(a,b)..."))?;
                    let pairs = inner
                        .split(")(")
                        .map(|p| {
                            let (a, b) = p.split_once(',').ok_or_else(|| bad("pair needs a comma"))?;
                            Ok((
                                a.trim().parse().map_err(|_| bad("bad exponent"))?,
                                b.trim().parse().map_err(|_| bad("bad exponent"))?,
                            ))
                        })
                        .collect::<Result<Vec<(u32, u32)>>>()?;
                    exps = Some(pairs);
                }
                _ => return Err(bad(&format!("unknown key '{k}'"))),
            }
        }
        let curve = MonomialCurve::new(exps.ok_or_else(|| bad("missing exps"))?)?;
        if n.is_some_and(|n| n != curve.n) {
            return Err(bad(&format!("n disagrees with {} exponent pairs", curve.exps.len())));
        }
        if e.is_some_and(|e| e != curve.e) {
            return Err(bad(&format!("e disagrees with exponent sums {}", curve.e)));
        }
        Ok(curve)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Degree of the curve.
    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn exps(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn param_eval(&self, t: &Scalar, s: &Scalar) -> Result<Vec<Scalar>> {
        if t.is_zero() && s.is_zero() {
            return Err(Error::InvalidArgument("(t, s) = (0, 0) is not a point of P^1".into()));
        }
        let one = t.domain().one();
        Ok(self
            .exps
            .iter()
            .map(|&(a, b)| {
                let mut x = one.clone();
                for _ in 0..a {
                    x = &x * t;
                }
                for _ in 0..b {
                    x = &x * s;
                }
                x
            })
            .collect())
    }

    pub fn param_eval_complex(&self, t: C64, s: C64) -> Result<Vec<C64>> {
        if t.norm() == 0.0 && s.norm() == 0.0 {
            return Err(Error::InvalidArgument("(t, s) = (0, 0) is not a point of P^1".into()));
        }
        Ok(self.exps.iter().map(|&(a, b)| t.powu(a) * s.powu(b)).collect())
    }
}

impl fmt::Display for MonomialCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "curve: n={} e={} exps=", self.n, self.e)?;
        for (a, b) in &self.exps {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// Number of distinct sums of `h` exponents `α_j` (with repetition), i.e.
/// the dimension of the degree-`h` part of the curve's coordinate ring.
pub fn semigroup_hilbert(curve: &MonomialCurve, h: u32) -> usize {
    let e = curve.e as usize;
    let mut reach = vec![false; 1];
    reach[0] = true;
    for step in 1..=h as usize {
        let mut next = vec![false; step * e + 1];
        for (x, _) in reach.iter().enumerate().filter(|(_, &r)| r) {
            for &(a, _) in &curve.exps {
                next[x + a as usize] = true;
            }
        }
        reach = next;
    }
    reach.iter().filter(|&&r| r).count()
}

/// Points cut on a curve by a hyperplane `Σ c_j X_j = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneSection {
    pub coefficients: Vec<f64>,
    /// Parameters `(t, s)`, scaled so that `max(|t|, |s|) = 1`.
    #[serde(serialize_with = "ser_params")]
    pub params: Vec<(C64, C64)>,
    /// Ambient coordinates of the points.
    #[serde(serialize_with = "ser_points")]
    pub points: Vec<Vec<C64>>,
    pub min_chordal_distance: f64,
    /// `max_k |F(t_k, s_k)| / ‖F‖`.
    pub max_residual: f64,
}

fn ser_params<S: serde::Serializer>(v: &[(C64, C64)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(t, u)| [[t.re, t.im], [u.re, u.im]]))
}

fn ser_points<S: serde::Serializer>(v: &[Vec<C64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()))
}

/// Chordal distance between two points of projective space.
pub fn chordal_distance(p: &[C64], q: &[C64]) -> f64 {
    let np: f64 = p.iter().map(|z| z.norm_sqr()).sum();
    let nq: f64 = q.iter().map(|z| z.norm_sqr()).sum();
    let dot: C64 = p.iter().zip(q).map(|(a, b)| a.conj() * b).sum();
    (1.0 - dot.norm_sqr() / (np * nq)).max(0.0).sqrt()
}

/// Uniform random hyperplane coefficients in `[-1, 1]`.
pub fn random_hyperplane(n: u32, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..=n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

pub fn hyperplane_section(curve: &MonomialCurve, coefficients: &[f64]) -> Result<HyperplaneSection> {
    if coefficients.len() != curve.exps.len() {
        return Err(Error::InvalidArgument(format!(
            "expected {} hyperplane coefficients, got {}",
            curve.exps.len(),
            coefficients.len()
        )));
    }
    if coefficients.iter().all(|&c| c == 0.0) {
        return Err(Error::InvalidArgument("hyperplane coefficients are all zero".into()));
    }
    let e = curve.e as usize;
    // F(t, 1) coefficients, ascending in t
    let mut f = vec![0.0f64; e + 1];
    for (&c, &(a, _)) in coefficients.iter().zip(&curve.exps) {
        f[a as usize] += c;
    }
    let norm = f.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::NonGenericHyperplane("the hyperplane contains the curve".into()));
    }
    let deg = f.iter().rposition(|&c| c != 0.0).expect("nonzero form");
    let low = f.iter().position(|&c| c != 0.0).expect("nonzero form");
    let at_infinity = e - deg;
    let at_zero = low;
    if at_infinity > 1 || at_zero > 1 {
        return Err(Error::NonGenericHyperplane(format!(
            "repeated root of multiplicity {} at {}",
            at_infinity.max(at_zero),
            if at_infinity > 1 { "t = ∞" } else { "t = 0" }
        )));
    }
    let mut finite: Vec<C64> = polynomial_roots(&f[low..=deg]);
    if at_zero == 1 {
        finite.push(C64::new(0.0, 0.0));
    }
    let scale = finite.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for i in 0..finite.len() {
        for j in 0..i {
            if (finite[i] - finite[j]).norm() <= ROOT_MERGE_TOL * scale {
                return Err(Error::NonGenericHyperplane(format!(
                    "roots t = {} and t = {} coincide within tolerance",
                    finite[i], finite[j]
                )));
            }
        }
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut params: Vec<(C64, C64)> = finite
        .iter()
        .map(|&t| if t.norm() <= 1.0 { (t, one) } else { (one, one / t) })
        .collect();
    if at_infinity == 1 {
        params.push((one, zero));
    }
    let points = params
        .iter()
        .map(|&(t, s)| curve.param_eval_complex(t, s))
        .collect::<Result<Vec<_>>>()?;
    let max_residual = params
        .iter()
        .map(|&(t, s)| {
            let v: C64 = coefficients
                .iter()
                .zip(&curve.exps)
                .map(|(&c, &(a, b))| t.powu(a) * s.powu(b) * c)
                .sum();
            v.norm() / norm
        })
        .fold(0.0, f64::max);
    let mut min_chordal_distance = f64::INFINITY;
    for i in 0..points.len() {
        for j in 0..i {
            min_chordal_distance = min_chordal_distance.min(chordal_distance(&points[i], &points[j]));
        }
    }
    Ok(HyperplaneSection {
        coefficients: coefficients.to_vec(),
        params,
        points,
        min_chordal_distance,
        max_residual,
    })
}

/// Substitute the parametrization into `p`, giving the binary form as a map
/// from the exponent of `t` to its coefficient (zero terms dropped).
pub fn substitute(p: &HomPoly, curve: &MonomialCurve) -> BTreeMap<u64, Scalar> {
    let mut out: BTreeMap<u64, Scalar> = BTreeMap::new();
    for (m, c) in p.terms() {
        let a: u64 = m.0.iter().zip(&curve.exps).map(|(&v, &(a, _))| v as u64 * a as u64).sum();
        match out.get_mut(&a) {
            Some(acc) => *acc = &*acc + c,
            None => {
                out.insert(a, c.clone());
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Check symbolically that each generator vanishes on the curve.
pub fn verify_ideal_on_curve(generators: &[HomPoly], curve: &MonomialCurve) -> VerificationReport {
    let mut failures = Vec::new();
    for (k, g) in generators.iter().enumerate() {
        if g.nvars() != curve.exps.len() {
            failures.push(Failure {
                location: format!("generator {k}: {} variables, curve has {}", g.nvars(), curve.exps.len()),
                row: None,
                col: Some(k),
                terms: vec![],
            });
            continue;
        }
        let rest = substitute(g, curve);
        if !rest.is_empty() {
            let total = g.degree().unwrap_or(0) as u64 * curve.e as u64;
            failures.push(Failure {
                location: format!("generator {k}"),
                row: None,
                col: Some(k),
                terms: rest
                    .iter()
                    .map(|(a, c)| format!("{c}*t^{a}*s^{}", total - a))
                    .collect(),
            });
        }
    }
    VerificationReport::from_checks(vec![Check {
        name: "generators vanish on the parametrization".into(),
        pass: failures.is_empty(),
        failures,
    }])
}
