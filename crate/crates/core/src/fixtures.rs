//! The two monomial curves in `P^4` with their explicit resolutions, stored
//! as text resources under `fixtures/`.

use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;

use crate::complexes::{
    check_complex, hilbert_function, hilbert_polynomial, ideal_hilbert_function, parse_complex,
    probabilistic_exactness, Check, Failure, FreeComplex, VerificationReport,
};
use crate::curves::{semigroup_hilbert, verify_ideal_on_curve, MonomialCurve};
use crate::error::{Error, Result};
use crate::polyring::parse::strip_comments;
use crate::polyring::Domain;

pub const FIXTURE_IDS: [&str; 2] = ["ex1", "ex2"];

const EX1: &str = include_str!("../fixtures/ex1.txt");
const EX2: &str = include_str!("../fixtures/ex2.txt");

/// Degrees up to which the semigroup count is compared with the shape.
pub const SEMIGROUP_H_MAX: u32 = 12;
/// Degrees up to which the ideal is checked by direct linear algebra.
pub const IDEAL_H_MAX: u32 = 6;

#[derive(Clone, Debug)]
pub struct CurveFixture {
    pub id: String,
    pub curve: MonomialCurve,
    pub complex: FreeComplex,
    pub expected_d: BigInt,
    pub expected_g: BigInt,
}

/// Built-in fixture text for `id`.
pub fn fixture_text(id: &str) -> Result<&'static str> {
    match id {
        "ex1" => Ok(EX1),
        "ex2" => Ok(EX2),
        _ => Err(Error::Fixture(format!(
            "unknown fixture '{id}' (known: {})",
            FIXTURE_IDS.join(", ")
        ))),
    }
}

pub fn load_fixture(id: &str) -> Result<CurveFixture> {
    parse_fixture(fixture_text(id)?)
}

/// Load a (possibly patched) fixture file.
pub fn load_fixture_file(path: &Path) -> Result<CurveFixture> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
    parse_fixture(&text)
}

fn parse_expect(line: &str) -> Result<(BigInt, BigInt)> {
    let (mut d, mut g) = (None, None);
    for field in line.split_whitespace() {
        let bad = || Error::Fixture(format!("bad expect field '{field}'"));
        let (k, v) = field.split_once('=').ok_or_else(bad)?;
        let v: BigInt = v.parse().map_err(|_| bad())?;
        match k {
            "d" => d = Some(v),
            "g" => g = Some(v),
            _ => return Err(bad()),
        }
    }
    match (d, g) {
        (Some(d), Some(g)) => Ok((d, g)),
        _ => Err(Error::Fixture("expect line needs d= and g=".into())),
    }
}

/// Parse fixture text: `id:`, `curve:` and `expect:` lines followed by a
/// complex in the format of [`parse_complex`].
pub fn parse_fixture(text: &str) -> Result<CurveFixture> {
    let clean = strip_comments(text);
    let (mut id, mut curve, mut expect) = (None, None, None);
    let mut rest = String::with_capacity(clean.len());
    for line in clean.split('\n') {
        let t = line.trim();
        if let Some(v) = t.strip_prefix("id:") {
            id = Some(v.trim().to_string());
        } else if t.starts_with("curve:") {
            curve = Some(MonomialCurve::parse(t)?);
        } else if let Some(v) = t.strip_prefix("expect:") {
            expect = Some(parse_expect(v)?);
        } else {
            rest.push_str(line);
            rest.push('\n');
            continue;
        }
        rest.push_str(&" ".repeat(line.len()));
        rest.push('\n');
    }
    let id = id.ok_or_else(|| Error::Fixture("missing 'id:' line".into()))?;
    let curve = curve.ok_or_else(|| Error::Fixture(format!("{id}: missing 'curve:' line")))?;
    let (expected_d, expected_g) = expect.ok_or_else(|| Error::Fixture(format!("{id}: missing 'expect:' line")))?;
    let complex = parse_complex(&rest, Domain::Rational).map_err(|e| Error::Fixture(format!("{id}: {e}")))?;
    if complex.n() != curve.n() {
        return Err(Error::Fixture(format!(
            "{id}: complex lives on P^{}, curve on P^{}",
            complex.n(),
            curve.n()
        )));
    }
    Ok(CurveFixture {
        id,
        curve,
        complex,
        expected_d,
        expected_g,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub id: String,
    pub pass: bool,
    #[serde(serialize_with = "crate::json::ser_big_opt")]
    pub d: Option<BigInt>,
    #[serde(serialize_with = "crate::json::ser_big_opt")]
    pub g: Option<BigInt>,
    pub report: VerificationReport,
}

fn check(name: impl Into<String>, failures: Vec<Failure>) -> Check {
    Check {
        name: name.into(),
        pass: failures.is_empty(),
        failures,
    }
}

fn note(location: String) -> Failure {
    Failure {
        location,
        row: None,
        col: None,
        terms: vec![],
    }
}

/// Run every check on a fixture: composites vanish, generators vanish on
/// the curve, generic exactness, degree and genus, and agreement of the
/// shape's Hilbert function with the semigroup count and with the ideal.
pub fn verify_fixture(fx: &CurveFixture, trials: usize, seed: u64, domain: Domain) -> Result<FixtureReport> {
    let c = &fx.complex;
    let mut report = check_complex(c);
    report = report.merge(verify_ideal_on_curve(&c.generators(), &fx.curve));
    report = report.merge(probabilistic_exactness(c, trials, seed, domain)?);

    let shape = c.shape()?;
    let (d, g, dg) = match hilbert_polynomial(&shape) {
        Ok((d, g)) => {
            let mut f = vec![];
            if d != fx.expected_d || g != fx.expected_g {
                f.push(note(format!(
                    "(d, g) = ({d}, {g}), expected ({}, {})",
                    fx.expected_d, fx.expected_g
                )));
            }
            (Some(d), Some(g), check("hilbert polynomial", f))
        }
        Err(e) => (None, None, check("hilbert polynomial", vec![note(e.to_string())])),
    };
    report = report.merge(VerificationReport::from_checks(vec![dg]));

    let semigroup: Vec<Failure> = (0..=SEMIGROUP_H_MAX)
        .filter_map(|h| {
            let a = BigInt::from(semigroup_hilbert(&fx.curve, h));
            let b = hilbert_function(&shape, h as i64);
            (a != b).then(|| note(format!("h = {h}: semigroup {a}, resolution {b}")))
        })
        .collect();
    let gens = c.generators();
    let mut ideal = Vec::new();
    for h in 0..=IDEAL_H_MAX {
        let a = BigInt::from(ideal_hilbert_function(&gens, c.names().len(), h, domain)?);
        let b = hilbert_function(&shape, h as i64);
        if a != b {
            ideal.push(note(format!("h = {h}: ideal {a}, resolution {b}")));
        }
    }
    report = report.merge(VerificationReport::from_checks(vec![
        check(format!("semigroup count = resolution H(h), h <= {SEMIGROUP_H_MAX}"), semigroup),
        check(format!("ideal H(h) = resolution H(h), h <= {IDEAL_H_MAX}"), ideal),
    ]));
    Ok(FixtureReport {
        id: fx.id.clone(),
        pass: report.pass,
        d,
        g,
        report,
    })
}
