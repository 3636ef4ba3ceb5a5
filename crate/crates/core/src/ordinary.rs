//! General-position tests for finite point sets: the ranks `λ_h` of the
//! degree-`h` evaluation systems against `min(d, c(n, h))`.

use nalgebra::DMatrix;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinat::{binom_dim_usize, binomial};
use crate::complexes::trial_seed;
use crate::curves::{chordal_distance, hyperplane_section, random_hyperplane, HyperplaneSection, MonomialCurve};
use crate::error::{Error, Result};
use crate::linalg::{numeric_rank, rank_exact, C64};
use crate::polyring::{monomials_of_degree, subsets, Monomial, Scalar};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_SUBSET_CAP: usize = 20000;
/// Chordal distance below which two numeric points are considered equal.
pub const DISTINCT_TOL: f64 = 1e-7;

#[derive(Clone, Debug)]
pub enum Points {
    Exact(Vec<Vec<Scalar>>),
    Numeric(Vec<Vec<C64>>),
}

/// `d` points of `P^{n-1}`, each given by `n` homogeneous coordinates.
#[derive(Clone, Debug)]
pub struct PointConfiguration {
    nvars: usize,
    points: Points,
    normalized: bool,
}

impl PointConfiguration {
    pub fn exact(points: Vec<Vec<Scalar>>) -> Result<Self> {
        let nvars = check_arity(points.iter().map(Vec::len))?;
        for (i, p) in points.iter().enumerate() {
            if p.iter().all(Scalar::is_zero) {
                return Err(Error::InvalidArgument(format!("point {i} is zero")));
            }
            for (j, q) in points[..i].iter().enumerate() {
                if rank_exact(&[p.clone(), q.clone()]) < 2 {
                    return Err(Error::InvalidArgument(format!("points {j} and {i} coincide")));
                }
            }
        }
        Ok(PointConfiguration {
            nvars,
            points: Points::Exact(points),
            normalized: false,
        })
    }

    /// Numeric points; each is rescaled to unit length.
    pub fn numeric(points: Vec<Vec<C64>>) -> Result<Self> {
        let nvars = check_arity(points.iter().map(Vec::len))?;
        let mut out: Vec<Vec<C64>> = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            let norm = p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(Error::InvalidArgument(format!("point {i} is zero or not finite")));
            }
            let p: Vec<C64> = p.iter().map(|z| z / norm).collect();
            for (j, q) in out.iter().enumerate() {
                if chordal_distance(&p, q) <= DISTINCT_TOL {
                    return Err(Error::InvalidArgument(format!("points {j} and {i} coincide")));
                }
            }
            out.push(p);
        }
        Ok(PointConfiguration {
            nvars,
            points: Points::Numeric(out),
            normalized: true,
        })
    }

    /// Move a hyperplane section into `n` coordinates: apply a seeded random
    /// invertible map whose last row is the hyperplane, then drop the last
    /// coordinate.
    pub fn from_section(section: &HyperplaneSection, seed: u64) -> Result<Self> {
        let c = &section.coefficients;
        let m = c.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chart = loop {
            let mut a = DMatrix::<f64>::zeros(m, m);
            for i in 0..m - 1 {
                for j in 0..m {
                    a[(i, j)] = rng.gen_range(-1.0..=1.0);
                }
            }
            for j in 0..m {
                a[(m - 1, j)] = c[j];
            }
            let sv = a.clone().singular_values();
            let (hi, lo) = (sv.max(), sv.min());
            if lo > 1e-6 * hi {
                break a.map(|x| C64::new(x, 0.0));
            }
        };
        let points = section
            .points
            .iter()
            .map(|p| {
                let y = &chart * nalgebra::DVector::from_column_slice(p);
                y.iter().take(m - 1).copied().collect()
            })
            .collect();
        PointConfiguration::numeric(points)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        match &self.points {
            Points::Exact(p) => p.len(),
            Points::Numeric(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> &Points {
        &self.points
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Embed exact rational points into complex doubles.
    pub fn to_numeric(&self) -> Result<Self> {
        match &self.points {
            Points::Numeric(_) => Ok(self.clone()),
            Points::Exact(p) => PointConfiguration::numeric(
                p.iter()
                    .map(|row| row.iter().map(|s| C64::new(s.to_f64(), 0.0)).collect())
                    .collect(),
            ),
        }
    }
}

fn check_arity(mut lens: impl Iterator<Item = usize>) -> Result<usize> {
    let Some(n) = lens.next() else {
        return Err(Error::InvalidArgument("empty point configuration".into()));
    };
    if n < 2 {
        return Err(Error::InvalidArgument("points need at least 2 coordinates".into()));
    }
    if lens.any(|l| l != n) {
        return Err(Error::InvalidArgument("points have different numbers of coordinates".into()));
    }
    Ok(n)
}

/// Evaluation matrix of degree-`h` monomials at the points.
#[derive(Clone, Debug)]
pub enum EvalMatrix {
    Exact(Vec<Vec<Scalar>>),
    Numeric(DMatrix<C64>),
}

fn monomial_value_exact(p: &[Scalar], m: &Monomial) -> Scalar {
    let mut v = p[0].domain().one();
    for (x, &e) in p.iter().zip(&m.0) {
        for _ in 0..e {
            v = &v * x;
        }
    }
    v
}

fn monomial_value(p: &[C64], m: &Monomial) -> C64 {
    p.iter().zip(&m.0).fold(C64::new(1.0, 0.0), |acc, (x, &e)| acc * x.powu(e))
}

/// Row `i` holds all degree-`h` monomials (graded-lex order) evaluated at
/// point `i`; numeric rows are normalized to unit length.
pub fn evaluation_matrix(points: &PointConfiguration, h: u32) -> Result<EvalMatrix> {
    if h == 0 {
        return Err(Error::InvalidArgument("h must be at least 1".into()));
    }
    let monos = monomials_of_degree(points.nvars, h);
    Ok(match &points.points {
        Points::Exact(ps) => EvalMatrix::Exact(
            ps.iter()
                .map(|p| monos.iter().map(|m| monomial_value_exact(p, m)).collect())
                .collect(),
        ),
        Points::Numeric(ps) => {
            let mut a = DMatrix::from_fn(ps.len(), monos.len(), |i, j| monomial_value(&ps[i], &monos[j]));
            for mut row in a.row_iter_mut() {
                let norm = row.norm();
                if norm > 0.0 {
                    row /= C64::new(norm, 0.0);
                }
            }
            EvalMatrix::Numeric(a)
        }
    })
}

struct RankResult {
    rank: usize,
    ill_conditioned: bool,
}

fn rank_of_rows(m: &EvalMatrix, rows: Option<&[usize]>, tol: f64) -> RankResult {
    match m {
        EvalMatrix::Exact(a) => {
            let sub: Vec<Vec<Scalar>> = match rows {
                Some(r) => r.iter().map(|&i| a[i].clone()).collect(),
                None => a.clone(),
            };
            RankResult {
                rank: rank_exact(&sub),
                ill_conditioned: false,
            }
        }
        EvalMatrix::Numeric(a) => {
            let nr = match rows {
                Some(r) => numeric_rank(&a.select_rows(r.iter()), tol),
                None => numeric_rank(a, tol),
            };
            RankResult {
                rank: nr.rank,
                ill_conditioned: nr.ill_conditioned,
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRecord {
    pub h: u32,
    pub c_nh: usize,
    /// `None` when the value follows from monotonicity once `λ = d`.
    pub lambda: Option<usize>,
    pub expected: usize,
    pub pass: bool,
    pub ill_conditioned: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetRecord {
    pub h: u32,
    pub subset_size: usize,
    pub subsets_total: String,
    pub subsets_tested: usize,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub failures: Vec<Vec<usize>>,
    pub ill_conditioned: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrdinarityReport {
    pub pass: bool,
    pub d: usize,
    pub nvars: usize,
    pub tolerance: f64,
    pub degrees: Vec<DegreeRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub strong: Vec<SubsetRecord>,
    pub notes: Vec<String>,
}

impl OrdinarityReport {
    pub fn merge(mut self, other: OrdinarityReport) -> Self {
        self.pass &= other.pass;
        for r in other.degrees {
            if !self.degrees.iter().any(|s| s.h == r.h) {
                self.degrees.push(r);
            }
        }
        self.degrees.sort_by_key(|r| r.h);
        self.strong.extend(other.strong);
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
        self
    }
}

/// Smallest `h` with `c(n, h) >= d`.
pub fn default_h_max(nvars: usize, d: usize) -> u32 {
    (1..).find(|&h| binom_dim_usize(nvars as u32, h as i64) >= d).expect("c(n, h) is unbounded")
}

/// `λ_h = min(d, c(n, h))` for `h = 1..=h_max`, stopping once `λ_h = d`.
pub fn weak_ordinary_check(points: &PointConfiguration, h_max: Option<u32>, tol: f64) -> Result<OrdinarityReport> {
    let d = points.len();
    let n = points.nvars;
    let h_max = h_max.unwrap_or_else(|| default_h_max(n, d));
    if h_max == 0 {
        return Err(Error::InvalidArgument("h_max must be at least 1".into()));
    }
    let mut degrees = Vec::new();
    let mut full = false;
    for h in 1..=h_max {
        let c = binom_dim_usize(n as u32, h as i64);
        let expected = c.min(d);
        if full {
            degrees.push(DegreeRecord {
                h,
                c_nh: c,
                lambda: None,
                expected,
                pass: true,
                ill_conditioned: false,
            });
            continue;
        }
        let m = evaluation_matrix(points, h)?;
        let r = rank_of_rows(&m, None, tol);
        full = r.rank == d;
        degrees.push(DegreeRecord {
            h,
            c_nh: c,
            lambda: Some(r.rank),
            expected,
            pass: r.rank == expected,
            ill_conditioned: r.ill_conditioned,
        });
    }
    let mut notes = vec!["checks a sampled configuration; ordinariness of a curve is not certified".into()];
    if degrees.iter().any(|r| r.lambda.is_none()) {
        notes.push("degrees after λ_h = d pass by monotonicity".into());
    }
    if degrees.iter().any(|r| r.ill_conditioned) {
        notes.push("warning: ill-conditioned rank decision (singular value gap below 100)".into());
    }
    Ok(OrdinarityReport {
        pass: degrees.iter().all(|r| r.pass),
        d,
        nvars: n,
        tolerance: tol,
        degrees,
        strong: vec![],
        notes,
    })
}

/// Every `c(n, h)`-subset of the points must impose independent conditions
/// on degree-`h` forms. Exhaustive up to `subset_cap` subsets, otherwise
/// `subset_cap` seeded random subsets.
pub fn strong_ordinary_check(
    points: &PointConfiguration,
    h: u32,
    subset_cap: usize,
    seed: u64,
    tol: f64,
) -> Result<OrdinarityReport> {
    let d = points.len();
    let n = points.nvars;
    let k = binom_dim_usize(n as u32, h as i64);
    let weak = weak_ordinary_check(points, Some(h), tol)?;
    if k > d {
        let mut rep = weak;
        rep.strong.push(SubsetRecord {
            h,
            subset_size: k,
            subsets_total: "0".into(),
            subsets_tested: 0,
            exhaustive: true,
            seed: None,
            failures: vec![],
            ill_conditioned: 0,
            note: Some(format!("c(n,h) = {k} > d = {d}; delegated to weak check")),
        });
        return Ok(rep);
    }
    let total = binomial(d as u64, k as u64);
    let exhaustive = total <= subset_cap.into();
    let chosen: Vec<Vec<usize>> = if exhaustive {
        subsets(d, k)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..subset_cap)
            .map(|_| {
                let mut s = sample(&mut rng, d, k).into_vec();
                s.sort_unstable();
                s
            })
            .collect()
    };
    let m = evaluation_matrix(points, h)?;
    let mut failures = Vec::new();
    let mut ill = 0;
    for s in &chosen {
        let r = rank_of_rows(&m, Some(s), tol);
        if r.ill_conditioned {
            ill += 1;
        }
        if r.rank < k {
            failures.push(s.clone());
        }
    }
    let pass = failures.is_empty();
    let mut rep = weak;
    rep.pass &= pass;
    rep.strong.push(SubsetRecord {
        h,
        subset_size: k,
        subsets_total: total.to_string(),
        subsets_tested: chosen.len(),
        exhaustive,
        seed: (!exhaustive).then_some(seed),
        failures,
        ill_conditioned: ill,
        note: None,
    });
    Ok(rep)
}

/// Sections tried before giving up on finding a generic hyperplane.
pub const MAX_SECTION_RETRIES: usize = 100;

#[derive(Clone, Debug, Serialize)]
pub struct SectionCheck {
    pub index: usize,
    pub seed: u64,
    pub section: HyperplaneSection,
    pub report: OrdinarityReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionsReport {
    pub pass: bool,
    pub seed: u64,
    pub rejected_hyperplanes: usize,
    pub sections: Vec<SectionCheck>,
}

/// Options for [`check_sections`].
#[derive(Clone, Debug)]
pub struct SectionOptions {
    pub count: usize,
    pub seed: u64,
    pub h_max: Option<u32>,
    pub strong_degrees: Vec<u32>,
    pub subset_cap: usize,
    pub tol: f64,
}

impl Default for SectionOptions {
    fn default() -> Self {
        SectionOptions {
            count: 20,
            seed: 1,
            h_max: None,
            strong_degrees: vec![1],
            subset_cap: DEFAULT_SUBSET_CAP,
            tol: DEFAULT_TOL,
        }
    }
}

/// Cut `curve` by `count` seeded random hyperplanes and run the weak check
/// (up to `h_max`) and the strong check (at each of `strong_degrees`) on
/// every section. Non-generic hyperplanes are resampled.
pub fn check_sections(curve: &MonomialCurve, opts: &SectionOptions) -> Result<SectionsReport> {
    let mut sections = Vec::with_capacity(opts.count);
    let mut rejected = 0;
    let mut attempt = 0usize;
    while sections.len() < opts.count {
        if rejected > MAX_SECTION_RETRIES {
            return Err(Error::Degenerate(format!(
                "more than {MAX_SECTION_RETRIES} non-generic hyperplanes sampled"
            )));
        }
        let seed = trial_seed(opts.seed, attempt);
        attempt += 1;
        let section = match hyperplane_section(curve, &random_hyperplane(curve.n(), seed)) {
            Ok(s) => s,
            Err(Error::NonGenericHyperplane(_)) => {
                rejected += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let points = PointConfiguration::from_section(&section, seed)?;
        let mut report = weak_ordinary_check(&points, opts.h_max, opts.tol)?;
        for &h in &opts.strong_degrees {
            report = report.merge(strong_ordinary_check(&points, h, opts.subset_cap, seed, opts.tol)?);
        }
        sections.push(SectionCheck {
            index: sections.len(),
            seed,
            section,
            report,
        });
    }
    Ok(SectionsReport {
        pass: sections.iter().all(|s| s.report.pass),
        seed: opts.seed,
        rejected_hyperplanes: rejected,
        sections,
    })
}
