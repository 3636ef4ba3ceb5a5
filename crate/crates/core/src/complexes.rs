//! Graded free complexes `0 -> E_{n-1} -> ... -> E_1 -> E_0 = O` on `P^n`.
//!
//! Checks are symbolic (`∂_{i-1} ∘ ∂_i = 0` over the exact coefficient
//! field) and probabilistic (rank conditions of the complex evaluated at
//! random points off the curve). A passing report means "generically
//! exact", never certified exactness.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinat::{binom_dim, binom_dim_usize};
use crate::error::{Error, Result};
use crate::linalg::rank_exact;
use crate::polyring::parse::{parse_matrix_at, strip_comments};
use crate::polyring::{format_matrix, hilbert_burch_row, matmul, monomials_of_degree, parse_vars_line, Domain, GradedMatrix, HomPoly};
use crate::shapes::{validate_shape, BettiShape, Provenance};

/// Retry cap when sampling points off the curve.
pub const MAX_POINT_RETRIES: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    names: Vec<String>,
    domain: Domain,
    /// Twist lists of `E_0, ..., E_{n-1}`; `E_0 = [0]`.
    twists: Vec<Vec<i64>>,
    /// `∂_i : E_{i+1} -> E_i`.
    differentials: Vec<GradedMatrix>,
}

impl FreeComplex {
    pub fn new(
        names: Vec<String>,
        domain: Domain,
        twists: Vec<Vec<i64>>,
        differentials: Vec<GradedMatrix>,
    ) -> Result<Self> {
        let nvars = names.len();
        if nvars < 4 {
            return Err(Error::InvalidArgument(format!(
                "complexes live on P^n with n >= 3; got {nvars} variables"
            )));
        }
        let n = nvars - 1;
        if twists.len() != n {
            return Err(Error::InvalidArgument(format!(
                "a complex on P^{n} needs blocks E_0..E_{} ({} blocks), got {}",
                n - 1,
                n,
                twists.len()
            )));
        }
        if twists[0] != [0] {
            return Err(Error::InvalidArgument(format!(
                "E_0 must be a single summand of twist 0, got {:?}",
                twists[0]
            )));
        }
        if differentials.len() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} differentials, got {}",
                n - 1,
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.nvars() != nvars {
                return Err(Error::InvalidArgument(format!("d{i} has wrong variable count")));
            }
            if d.row_twists() != twists[i].as_slice() || d.col_twists() != twists[i + 1].as_slice() {
                return Err(Error::TwistMismatch(format!(
                    "d{i} maps twists {:?} -> {:?}, blocks are E_{} = {:?} and E_{i} = {:?}",
                    d.col_twists(),
                    d.row_twists(),
                    i + 1,
                    twists[i + 1],
                    twists[i]
                )));
            }
        }
        Ok(FreeComplex {
            names,
            domain,
            twists,
            differentials,
        })
    }

    /// Ambient dimension `n` (the complex lives on `P^n`).
    pub fn n(&self) -> u32 {
        self.names.len() as u32 - 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn twists(&self, i: usize) -> &[i64] {
        &self.twists[i]
    }

    pub fn differential(&self, i: usize) -> &GradedMatrix {
        &self.differentials[i]
    }

    pub fn differentials(&self) -> &[GradedMatrix] {
        &self.differentials
    }

    /// Generators of the ideal: the entries of `∂_0`.
    pub fn generators(&self) -> Vec<HomPoly> {
        self.differentials[0].entries()[0].clone()
    }

    pub fn shape(&self) -> Result<BettiShape> {
        BettiShape::from_twist_lists(self.n(), &self.twists[1..], Provenance::Complex)
    }

    /// Replace one entry (for perturbation experiments).
    pub fn with_entry(&self, diff: usize, row: usize, col: usize, value: HomPoly) -> Result<Self> {
        let d = &self.differentials[diff];
        let mut entries = d.entries().to_vec();
        entries[row][col] = value;
        let mut diffs = self.differentials.clone();
        diffs[diff] = GradedMatrix::new(d.nvars(), d.row_twists().to_vec(), d.col_twists().to_vec(), entries)?;
        FreeComplex::new(self.names.clone(), self.domain, self.twists.clone(), diffs)
    }

    /// Reduce all coefficients into `domain`.
    pub fn reduce(&self, domain: Domain) -> Result<Self> {
        let diffs = self
            .differentials
            .iter()
            .map(|d| d.map_entries(|p| p.reduce(domain)))
            .collect::<Result<Vec<_>>>()?;
        FreeComplex::new(self.names.clone(), domain, self.twists.clone(), diffs)
    }
}

/// One named check inside a report.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub failures: Vec<Failure>,
}

/// A localized failure: which map, which entry, which surviving terms.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub location: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<String>,
}

/// Ranks observed at one random point.
#[derive(Clone, Debug, Serialize)]
pub struct PointRanks {
    pub trial: usize,
    pub seed: u64,
    pub point: Vec<String>,
    pub ranks: Vec<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointRanks>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn from_checks(checks: Vec<Check>) -> Self {
        VerificationReport {
            pass: checks.iter().all(|c| c.pass),
            checks,
            points: vec![],
            notes: vec![],
        }
    }

    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.pass = self.pass && other.pass;
        self.checks.extend(other.checks);
        self.points.extend(other.points);
        self.notes.extend(other.notes);
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Failure> {
        self.checks.iter().flat_map(|c| c.failures.iter())
    }
}

/// Render each term of `p` as text (for failure listings).
pub(crate) fn term_strings(p: &HomPoly, names: &[String]) -> Vec<String> {
    p.terms()
        .map(|(m, c)| HomPoly::monomial(m.clone(), c.clone()).to_string_with(names))
        .collect()
}

/// Verify `∂_{i-1} ∘ ∂_i = 0` symbolically for every consecutive pair.
pub fn check_complex(c: &FreeComplex) -> VerificationReport {
    let mut checks = Vec::new();
    for i in 1..c.differentials.len() {
        let name = format!("d{}*d{} = 0", i - 1, i);
        let failures = match matmul(&c.differentials[i - 1], &c.differentials[i]) {
            Ok(prod) => prod
                .nonzero_entries()
                .into_iter()
                .map(|(r, col, p)| Failure {
                    location: format!("d{}*d{}", i - 1, i),
                    row: Some(r),
                    col: Some(col),
                    terms: term_strings(p, &c.names),
                })
                .collect(),
            Err(e) => vec![Failure {
                location: format!("d{}*d{}: {e}", i - 1, i),
                row: None,
                col: None,
                terms: vec![],
            }],
        };
        checks.push(Check {
            name,
            pass: failures.is_empty(),
            failures,
        });
    }
    VerificationReport::from_checks(checks)
}

/// Seed of trial `t` derived from the run seed.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(trial as u64)
        .rotate_left(17)
}

/// Bound on random integer coordinates over `Q`.
const RATIONAL_POINT_BOUND: i64 = 1000;

/// Evaluate the complex at `trials` random points off the curve and check
/// `rank ∂_0 = 1`, `rank ∂_{i-1} + rank ∂_i = dim E_i`, and injectivity
/// of the last map.
pub fn probabilistic_exactness(
    c: &FreeComplex,
    trials: usize,
    seed: u64,
    domain: Domain,
) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let c = if c.domain == domain { c.clone() } else { c.reduce(domain)? };
    let nvars = c.names.len();
    let mut points = Vec::with_capacity(trials);
    for trial in 0..trials {
        let tseed = trial_seed(seed, trial);
        let mut rng = ChaCha8Rng::seed_from_u64(tseed);
        let mut point = None;
        for _ in 0..MAX_POINT_RETRIES {
            let p: Vec<_> = (0..nvars).map(|_| domain.random(&mut rng, RATIONAL_POINT_BOUND)).collect();
            if c.differentials[0].eval(&p).iter().flatten().any(|s| !s.is_zero()) {
                point = Some(p);
                break;
            }
        }
        let point = point.ok_or_else(|| {
            Error::Degenerate(format!(
                "trial {trial} (seed {tseed}): every sampled point lies on the zero set of d0"
            ))
        })?;
        let ranks: Vec<usize> = c
            .differentials
            .iter()
            .map(|d| rank_exact(&d.eval(&point)))
            .collect();
        let last = c.twists.len() - 1;
        let mut pass = ranks[0] == 1;
        for i in 1..=last {
            let right = if i < ranks.len() { ranks[i] } else { 0 };
            pass &= ranks[i - 1] + right == c.twists[i].len();
        }
        points.push(PointRanks {
            trial,
            seed: tseed,
            point: point.iter().map(|s| s.to_string()).collect(),
            ranks,
            pass,
        });
    }
    let failures: Vec<Failure> = points
        .iter()
        .filter(|p| !p.pass)
        .map(|p| Failure {
            location: format!("trial {} (seed {}): ranks {:?}", p.trial, p.seed, p.ranks),
            row: None,
            col: None,
            terms: vec![],
        })
        .collect();
    let check = Check {
        name: format!("generic exactness at {trials} points over {domain}"),
        pass: failures.is_empty(),
        failures,
    };
    let mut report = VerificationReport::from_checks(vec![check]);
    report.points = points;
    report
        .notes
        .push("exactness is checked at random points (generically exact), not certified".into());
    Ok(report)
}

/// `H(h) = Σ_{i=0}^{n-1} (-1)^i Σ_{(a,m) ∈ E_i} m·c(n+1, h-a)`.
pub fn hilbert_function(shape: &BettiShape, h: i64) -> BigInt {
    let n = shape.n;
    let mut acc = binom_dim(n + 1, h);
    for (idx, block) in shape.blocks.iter().enumerate() {
        let s: BigInt = block
            .iter()
            .map(|tm| BigInt::from(tm.mult) * binom_dim(n + 1, h - tm.twist))
            .sum();
        // E_1 sits at idx 0 and enters with sign -1.
        if idx % 2 == 0 {
            acc -= s;
        } else {
            acc += s;
        }
    }
    acc
}

/// Degree and genus encoded by a shape, cross-checked against its Hilbert
/// function on `[h*, h*+5]` with `h* = 1 + max twist`.
pub fn hilbert_polynomial(shape: &BettiShape) -> Result<(BigInt, BigInt)> {
    let inv = validate_shape(shape)?;
    let start = 1 + shape.overall_max_twist();
    for h in start..=start + 5 {
        let hf = hilbert_function(shape, h);
        let poly = BigInt::from(h) * &inv.d - &inv.g + 1;
        if hf != poly {
            return Err(Error::Consistency(format!(
                "H({h}) = {hf} but h*d - g + 1 = {poly}"
            )));
        }
    }
    Ok((inv.d, inv.g))
}

/// Hilbert function of `S / (generators)` in degree `h`, computed directly
/// as `c(nvars, h)` minus the rank of the degree-`h` part of the ideal.
pub fn ideal_hilbert_function(generators: &[HomPoly], nvars: usize, h: u32, domain: Domain) -> Result<usize> {
    let basis = monomials_of_degree(nvars, h);
    let index: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in generators {
        let Some(deg) = g.degree() else { continue };
        if deg > h {
            continue;
        }
        let g = g.reduce(domain)?;
        for m in monomials_of_degree(nvars, h - deg) {
            let mut row = vec![domain.zero(); basis.len()];
            for (gm, c) in g.terms() {
                row[index[&gm.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(binom_dim_usize(nvars as u32, h as i64) - rank_exact(&rows))
}

/// Random Hilbert–Burch complex `0 -> E_2 -> E_1 -> O` on `P^3` with the
/// given shape: `M` has random entries of degree `col twist - row twist`
/// and `∂_0` is the row of signed maximal minors of `M`.
pub fn random_hilbert_burch(shape: &BettiShape, domain: Domain, seed: u64) -> Result<FreeComplex> {
    if shape.n != 3 {
        return Err(Error::InvalidArgument(format!(
            "Hilbert–Burch complexes need n = 3, got n = {}",
            shape.n
        )));
    }
    let nvars = 4;
    let rows = shape.twist_list(1);
    let cols = shape.twist_list(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&c| {
                    if c >= r {
                        HomPoly::random(nvars, (c - r) as u32, domain, &mut rng, RATIONAL_POINT_BOUND)
                    } else {
                        HomPoly::zero(nvars)
                    }
                })
                .collect()
        })
        .collect();
    let m = GradedMatrix::new(nvars, rows.clone(), cols.clone(), entries)?;
    let p = hilbert_burch_row(&m)?;
    let d0 = GradedMatrix::new(nvars, vec![0], rows.clone(), vec![p])?;
    FreeComplex::new(
        crate::polyring::poly::default_names(nvars),
        domain,
        vec![vec![0], rows, cols],
        vec![d0, m],
    )
}

fn parse_twist_list(text: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        let bad = || Error::Syntax { pos: 0, msg: format!("bad twist token '{tok}'") };
        let (a, m) = match tok.split_once('^') {
            Some((a, m)) => (a.parse::<i64>().map_err(|_| bad())?, m.parse::<usize>().map_err(|_| bad())?),
            None => (tok.parse::<i64>().map_err(|_| bad())?, 1),
        };
        out.extend(std::iter::repeat_n(a, m));
    }
    Ok(out)
}

fn matrix_index(label: &str) -> Option<usize> {
    let l = label.trim();
    let l = l.strip_prefix('∂').or_else(|| l.strip_prefix('d'))?;
    l.trim_start_matches('_').parse().ok()
}

/// Parse a complex from the fixture format:
///
/// ```text
/// vars: X,Y,Z,T,U
/// block: 0
/// block: 2^5
/// block: 3^5
/// block: 5
/// matrix d0:
/// [X^2-ZU, XY-TU, Y^2-XZ, YZ-XT, Z^2-YT]
/// matrix d1:
/// ...
/// ```
///
/// `block:` lines list the twists of `E_0, E_1, ...` in order (`a^m` is
/// `m` copies of `a`); matrix `di` maps `E_{i+1}` to `E_i`.
pub fn parse_complex(text: &str, domain: Domain) -> Result<FreeComplex> {
    let clean = strip_comments(text);
    let mut names: Option<Vec<String>> = None;
    let mut twists: Vec<Vec<i64>> = Vec::new();
    let mut sections: Vec<(usize, usize, usize)> = Vec::new(); // (index, start, end) byte ranges
    let mut offset = 0usize;
    let mut current: Option<(usize, usize)> = None;
    for line in clean.split('\n') {
        let line_start = offset;
        offset += line.len() + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let header = if t.starts_with("vars:") || t.starts_with("block:") || t.starts_with("matrix") {
            Some(t)
        } else {
            None
        };
        match header {
            Some(h) => {
                if let Some((idx, start)) = current.take() {
                    sections.push((idx, start, line_start));
                }
                if h.starts_with("vars:") {
                    names = Some(parse_vars_line(h)?);
                } else if let Some(rest) = h.strip_prefix("block:") {
                    twists.push(parse_twist_list(rest)?);
                } else {
                    let label = h
                        .strip_prefix("matrix")
                        .and_then(|r| r.trim().strip_suffix(':'))
                        .ok_or_else(|| Error::Fixture(format!("malformed matrix header '{h}'")))?;
                    let idx = matrix_index(label)
                        .ok_or_else(|| Error::Fixture(format!("matrix label '{label}' is not d<i>")))?;
                    current = Some((idx, offset));
                }
            }
            None if current.is_some() => {}
            None => return Err(Error::Fixture(format!("unexpected line '{t}'"))),
        }
    }
    if let Some((idx, start)) = current {
        sections.push((idx, start, clean.len()));
    }
    let names = names.ok_or_else(|| Error::Fixture("missing 'vars:' header".into()))?;
    let nvars = names.len();
    let mut diffs: Vec<Option<GradedMatrix>> = vec![None; twists.len().saturating_sub(1)];
    for (idx, start, end) in sections {
        let slot = diffs
            .get_mut(idx)
            .ok_or_else(|| Error::Fixture(format!("matrix d{idx} has no blocks E_{idx}, E_{}", idx + 1)))?;
        if slot.is_some() {
            return Err(Error::Fixture(format!("matrix d{idx} given twice")));
        }
        let body = &clean[start.min(clean.len())..end.min(clean.len())];
        let rows = parse_matrix_at(body, start, &names, domain)
            .map_err(|e| Error::Fixture(format!("matrix d{idx}: {e}")))?;
        let m = GradedMatrix::new(nvars, twists[idx].clone(), twists[idx + 1].clone(), rows)
            .map_err(|e| Error::Fixture(format!("matrix d{idx}: {e}")))?;
        *slot = Some(m);
    }
    let diffs = diffs
        .into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| Error::Fixture(format!("missing matrix d{i}"))))
        .collect::<Result<Vec<_>>>()?;
    FreeComplex::new(names, domain, twists, diffs)
}

fn format_twists(ts: &[i64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < ts.len() {
        let mut j = i;
        while j < ts.len() && ts[j] == ts[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(ts[i].to_string());
        } else {
            parts.push(format!("{}^{}", ts[i], j - i));
        }
        i = j;
    }
    parts.join(" ")
}

/// Print a complex in the fixture format accepted by [`parse_complex`].
pub fn format_complex(c: &FreeComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vars: {}", c.names.join(","));
    for t in &c.twists {
        let _ = writeln!(out, "block: {}", format_twists(t));
    }
    for (i, d) in c.differentials.iter().enumerate() {
        let _ = writeln!(out, "matrix d{i}:");
        let _ = writeln!(out, "{}", format_matrix(d.entries(), &c.names));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::solve_shape;

    const EX1: &str = "\
vars: X,Y,Z,T,U
block: 0
block: 2^5
block: 3^5
block: 5
matrix d0:
[X^2-ZU, XY-TU, Y^2-XZ, YZ-XT, Z^2-YT]
matrix d1:
[0, 0, -T, Z, -Y]
[0, 0, Z, -Y, X]
[T, -Z, 0, X, 0]
[-Z, Y, -X, 0, -U]
[Y, -X, 0, U, 0]
matrix d2:
[X^2-ZU]
[XY-TU]
[Y^2-XZ]
[YZ-XT]
[Z^2-YT]
";

    fn ex1() -> FreeComplex {
        parse_complex(EX1, Domain::Rational).unwrap()
    }

    #[test]
    fn ex1_is_a_complex() {
        let c = ex1();
        assert_eq!(c.n(), 4);
        assert!(check_complex(&c).pass);
        assert_eq!(c.shape().unwrap(), solve_shape(4, 5).unwrap());
    }

    #[test]
    fn perturbed_ex1_fails_with_entries() {
        let c = ex1();
        let t = crate::polyring::parse_poly("T", c.names(), Domain::Rational).unwrap();
        let bad = c.with_entry(1, 0, 3, t).unwrap();
        let rep = check_complex(&bad);
        assert!(!rep.pass);
        let f: Vec<_> = rep.failures().collect();
        assert!(!f.is_empty());
        assert!(f.iter().any(|f| f.location == "d0*d1" && f.col == Some(3)));
        assert!(f.iter().all(|f| !f.terms.is_empty()));
    }

    #[test]
    fn exactness_ranks_ex1() {
        let rep = probabilistic_exactness(&ex1(), 20, 1, Domain::Prime(32003)).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.points.len(), 20);
        assert!(rep.points.iter().all(|p| p.ranks == vec![1, 4, 1]));
        let q = probabilistic_exactness(&ex1(), 3, 1, Domain::Rational).unwrap();
        assert!(q.pass);
    }

    #[test]
    fn zero_differential_fails_exactness() {
        let c = ex1();
        let zero = GradedMatrix::zeros(5, c.twists(1).to_vec(), c.twists(2).to_vec());
        let mut diffs = c.differentials().to_vec();
        diffs[1] = zero;
        let broken = FreeComplex::new(c.names().to_vec(), c.domain(), (0..4).map(|i| c.twists(i).to_vec()).collect(), diffs).unwrap();
        assert!(check_complex(&broken).pass);
        assert!(!probabilistic_exactness(&broken, 5, 1, Domain::Prime(32003)).unwrap().pass);
    }

    #[test]
    fn domain_change_preserves_check() {
        let c = ex1();
        let p = Domain::Prime(32003);
        assert_eq!(check_complex(&c).pass, check_complex(&c.reduce(p).unwrap()).pass);
        let t = crate::polyring::parse_poly("T", c.names(), Domain::Rational).unwrap();
        let bad = c.with_entry(1, 0, 3, t).unwrap();
        assert_eq!(check_complex(&bad).pass, check_complex(&bad.reduce(p).unwrap()).pass);
    }

    #[test]
    fn hilbert_values() {
        let s = solve_shape(4, 5).unwrap();
        assert_eq!(hilbert_function(&s, 0), 1.into());
        assert_eq!(hilbert_function(&s, 1), 5.into());
        assert_eq!(hilbert_function(&s, 2), 10.into());
        assert_eq!(hilbert_polynomial(&s).unwrap(), (5.into(), 1.into()));
        assert_eq!(hilbert_polynomial(&solve_shape(3, 3).unwrap()).unwrap(), (3.into(), 0.into()));
    }

    #[test]
    fn ideal_hilbert_matches_shape_ex1() {
        let c = ex1();
        let s = c.shape().unwrap();
        for h in 0..6u32 {
            let direct = ideal_hilbert_function(&c.generators(), 5, h, Domain::Prime(32003)).unwrap();
            assert_eq!(BigInt::from(direct), hilbert_function(&s, h as i64), "h = {h}");
        }
    }

    #[test]
    fn format_round_trip() {
        let c = ex1();
        let text = format_complex(&c);
        assert!(text.contains("block: 2^5"));
        assert_eq!(parse_complex(&text, Domain::Rational).unwrap(), c);
    }

    #[test]
    fn parse_errors_localized() {
        let bad = EX1.replace("[T, -Z, 0, X, 0]", "[T, -Z, 0, X^2, 0]");
        match parse_complex(&bad, Domain::Rational) {
            Err(Error::Fixture(msg)) => {
                assert!(msg.contains("d1"), "{msg}");
                assert!(msg.contains("(2, 3)"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_complex("block: 0\n", Domain::Rational).is_err());
        assert!(parse_complex(&EX1.replace("matrix d2:", "matrix d7:"), Domain::Rational).is_err());
    }

    #[test]
    fn hilbert_burch_curves() {
        let p = Domain::Prime(32003);
        for d in 3..=8u32 {
            let s = crate::shapes::shape3(d).unwrap();
            let c = random_hilbert_burch(&s, p, d as u64).unwrap();
            assert!(check_complex(&c).pass);
            assert!(probabilistic_exactness(&c, 3, 1, p).unwrap().pass, "d = {d}");
            for h in 0..6u32 {
                let direct = ideal_hilbert_function(&c.generators(), 4, h, p).unwrap();
                assert_eq!(BigInt::from(direct), hilbert_function(&s, h as i64), "d = {d} h = {h}");
            }
        }
    }

    #[test]
    fn koszul_truncation_is_a_complex() {
        let names: Vec<String> = ["X", "Y", "Z", "T", "U"].iter().map(|s| s.to_string()).collect();
        let q = Domain::Rational;
        let koszul = |k: usize| -> GradedMatrix {
            let src = crate::polyring::subsets(5, k);
            let tgt = crate::polyring::subsets(5, k - 1);
            let entries = tgt
                .iter()
                .map(|t| {
                    src.iter()
                        .map(|s| match s.iter().position(|x| !t.contains(x)) {
                            Some(pos) if s.iter().filter(|x| !t.contains(x)).count() == 1 => {
                                let v = HomPoly::var(5, s[pos], q);
                                if pos % 2 == 0 { v } else { v.neg() }
                            }
                            _ => HomPoly::zero(5),
                        })
                        .collect()
                })
                .collect();
            GradedMatrix::new(5, vec![(k - 1) as i64; tgt.len()], vec![k as i64; src.len()], entries).unwrap()
        };
        let diffs = vec![koszul(1), koszul(2), koszul(3)];
        let twists = vec![vec![0], vec![1; 5], vec![2; 10], vec![3; 10]];
        let c = FreeComplex::new(names, q, twists, diffs).unwrap();
        assert!(check_complex(&c).pass);
    }
}
