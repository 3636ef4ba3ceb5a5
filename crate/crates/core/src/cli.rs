//! Command-line front end. Every subcommand prints one JSON document on
//! standard output; exit status is 0 on pass, 1 on a failed verification
//! and 2 on a usage error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinat::{caliber, genus_bound_pi};
use crate::complexes::{
    check_complex, format_complex, hilbert_function, hilbert_polynomial, parse_complex,
    probabilistic_exactness,
};
use crate::curves::{hyperplane_section, random_hyperplane, MonomialCurve};
use crate::eagon_northcott::{build_en, catalecticant_phi, random_phi};
use crate::error::Error;
use crate::fixtures::{fixture_text, load_fixture, load_fixture_file, verify_fixture};
use crate::json::big;
use crate::linalg::C64;
use crate::ordinary::{
    check_sections, strong_ordinary_check, weak_ordinary_check, PointConfiguration, SectionOptions,
    DEFAULT_SUBSET_CAP,
};
use crate::polyring::{Domain, DEFAULT_PRIME};
use crate::shapes::{add_redundancy, shape3, solve_shape, validate_shape, BettiShape};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the default prime.
pub const PRIME_ENV: &str = "GF_PRIME";

#[derive(Parser, Debug)]
#[command(name = "ordcurve", version, about = "Resolutions and ordinariness of maximal-genus curves")]
pub struct Cli {
    /// Human-readable output instead of compact JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the output to a file as well as standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RandomOpts {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Prime for probabilistic checks (default: $GF_PRIME or 32003).
    #[arg(long)]
    pub prime: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Genus bound π'(n, d) and k0.
    Pi {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: String,
    },
    /// Resolution shape of a maximal-genus curve of degree d in P^n.
    Shape {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: String,
        /// Add redundant summands, as `i:twist:u` (repeatable).
        #[arg(long = "redundancy", value_name = "I:TWIST:U")]
        redundancy: Vec<String>,
    },
    /// Shape of the Hilbert–Burch matrix for n = 3.
    Shape3 {
        #[arg(long)]
        d: String,
    },
    /// Eagon–Northcott complex of a random (or catalecticant) matrix.
    En {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k0: u64,
        #[arg(long)]
        catalecticant: bool,
        /// Also run the probabilistic exactness check.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        random: RandomOpts,
    },
    /// Verify a complex given in the fixture format.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        random: RandomOpts,
    },
    /// Points cut on a monomial curve by a hyperplane.
    Section {
        #[command(flatten)]
        curve: CurveOpts,
        /// Hyperplane coefficients `c0,...,cn` (random from --seed if absent).
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Weak and strong ordinariness checks on hyperplane sections or points.
    Ordinary {
        #[command(flatten)]
        curve: CurveOpts,
        /// JSON array of points (numbers, `[re, im]` pairs, or "p/q" strings).
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        sections: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        h_max: Option<u32>,
        /// Degrees for the all-subsets check (comma separated).
        #[arg(long, default_value = "1")]
        strong: String,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        subset_cap: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Hilbert function and polynomial of a shape.
    Hilbert {
        #[arg(long, requires = "d")]
        n: Option<u32>,
        #[arg(long)]
        d: Option<String>,
        /// Shape JSON file instead of (n, d).
        #[arg(long, conflicts_with_all = ["n", "d"])]
        shape: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        h_max: u32,
    },
    /// Load a built-in fixture and optionally run the full pipeline.
    Fixture {
        #[arg(long, default_value = "ex1")]
        id: String,
        /// Read a patched fixture file instead of the built-in text.
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long)]
        verify_all: bool,
        #[command(flatten)]
        random: RandomOpts,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CurveOpts {
    /// Built-in fixture whose curve to use.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Curve line, e.g. "curve: n=4 e=5 exps=(2,3)(3,2)(4,1)(5,0)(0,5)".
    #[arg(long)]
    pub curve: Option<String>,
}

/// Result of one invocation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::DegreeTooSmall { .. } | Error::Syntax { .. } => Failure::Usage(e.to_string()),
            other => Failure::Other(other),
        }
    }
}

struct Output {
    json: Value,
    pretty: Option<String>,
    pass: bool,
}

impl Output {
    fn pass(json: Value) -> Self {
        Output {
            json,
            pretty: None,
            pass: true,
        }
    }
}

fn prime_from(opt: Option<u64>) -> Result<Domain, Failure> {
    let p = match opt {
        Some(p) => p,
        None => match std::env::var(PRIME_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{PRIME_ENV}='{v}' is not an integer")))?,
            Err(_) => DEFAULT_PRIME,
        },
    };
    Domain::prime(p).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_big(s: &str, what: &str) -> Result<BigInt, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("--{what} must be an integer, got '{s}'")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn resolve_curve(opts: &CurveOpts) -> Result<MonomialCurve, Failure> {
    match (&opts.fixture, &opts.curve) {
        (Some(id), None) => {
            fixture_text(id).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(load_fixture(id)?.curve)
        }
        (None, Some(line)) => {
            let line = if line.trim_start().starts_with("curve:") {
                line.clone()
            } else {
                format!("curve: {line}")
            };
            Ok(MonomialCurve::parse(&line).map_err(|e| Failure::Usage(e.to_string()))?)
        }
        _ => Err(Failure::Usage("give exactly one of --fixture or --curve".into())),
    }
}

fn shape_json(s: &BettiShape) -> Value {
    serde_json::from_str(&s.to_json()).expect("shape JSON")
}

fn parse_points(text: &str) -> Result<PointConfiguration, Failure> {
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("points JSON: {e}")))?;
    let rows = v
        .as_array()
        .ok_or_else(|| Failure::Usage("points must be a JSON array of points".into()))?;
    let exact = rows
        .iter()
        .flat_map(|r| r.as_array().into_iter().flatten())
        .all(|c| c.is_string() || c.is_i64());
    if exact {
        let q = Domain::Rational;
        let pts = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Failure::Usage("each point must be an array".into()))?
                    .iter()
                    .map(|c| {
                        let s = match c {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        let r: num_rational::BigRational = s
                            .trim()
                            .parse()
                            .map_err(|_| Failure::Usage(format!("bad rational coordinate '{s}'")))?;
                        Ok(q.from_rational(&r)?)
                    })
                    .collect::<Result<Vec<_>, Failure>>()
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        return Ok(PointConfiguration::exact(pts)?);
    }
    let pts = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Failure::Usage("each point must be an array".into()))?
                .iter()
                .map(|c| match c {
                    Value::Number(x) => Ok(C64::new(x.as_f64().unwrap_or(f64::NAN), 0.0)),
                    Value::Array(a) if a.len() == 2 => Ok(C64::new(
                        a[0].as_f64().unwrap_or(f64::NAN),
                        a[1].as_f64().unwrap_or(f64::NAN),
                    )),
                    other => Err(Failure::Usage(format!("bad coordinate {other}"))),
                })
                .collect::<Result<Vec<_>, Failure>>()
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(PointConfiguration::numeric(pts)?)
}

fn parse_degrees(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad degree '{t}' in --strong")))
        })
        .collect()
}

fn dispatch(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Pi { n, d } => {
            let d = parse_big(d, "d")?;
            let k0 = caliber(*n, d.clone())?;
            let pi = genus_bound_pi(*n, d)?;
            Ok(Output::pass(json!({ "k0": k0, "pi": big(&pi) })))
        }
        Command::Shape { n, d, redundancy } => {
            let mut s = solve_shape(*n, parse_big(d, "d")?)?;
            for r in redundancy {
                let parts: Vec<&str> = r.split(':').collect();
                let bad = || Failure::Usage(format!("--redundancy wants i:twist:u, got '{r}'"));
                if parts.len() != 3 {
                    return Err(bad());
                }
                let i = parts[0].parse().map_err(|_| bad())?;
                let t = parts[1].parse().map_err(|_| bad())?;
                let u = parts[2].parse().map_err(|_| bad())?;
                s = add_redundancy(&s, i, t, u)?;
            }
            Ok(Output {
                json: shape_json(&s),
                pretty: Some(s.to_string()),
                pass: true,
            })
        }
        Command::Shape3 { d } => {
            let s = shape3(parse_big(d, "d")?)?;
            Ok(Output {
                json: shape_json(&s),
                pretty: Some(s.to_string()),
                pass: true,
            })
        }
        Command::En {
            n,
            k0,
            catalecticant,
            check,
            random,
        } => {
            let domain = prime_from(random.prime)?;
            let input = if *catalecticant {
                catalecticant_phi(*n, *k0, Domain::Rational)?
            } else {
                random_phi(*n, *k0, domain, random.seed)?
            };
            let c = build_en(&input)?;
            let text = format_complex(&c);
            let mut out = json!({
                "n": n,
                "k0": k0,
                "seed": random.seed,
                "shape": shape_json(&c.shape()?),
                "complex": text,
            });
            let mut pass = true;
            if *check {
                let rep = probabilistic_exactness(&c, random.trials, random.seed, domain)?;
                pass = rep.pass;
                out["exactness"] = to_value(&rep);
            }
            Ok(Output {
                json: out,
                pretty: Some(text),
                pass,
            })
        }
        Command::Verify { file, random } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let c = parse_complex(&text, Domain::Rational)?;
            let domain = prime_from(random.prime)?;
            let mut rep = check_complex(&c).merge(probabilistic_exactness(&c, random.trials, random.seed, domain)?);
            let hp = hilbert_polynomial(&c.shape()?);
            let dg = match &hp {
                Ok((d, g)) => json!({ "d": big(d), "g": big(g) }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            rep.pass &= hp.is_ok();
            Ok(Output {
                pass: rep.pass,
                json: json!({ "pass": rep.pass, "hilbert_polynomial": dg, "report": to_value(&rep) }),
                pretty: None,
            })
        }
        Command::Section { curve, coeffs, seed } => {
            let curve = resolve_curve(curve)?;
            let c: Vec<f64> = match coeffs {
                Some(s) => s
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| Failure::Usage(format!("bad coefficient '{t}'")))
                    })
                    .collect::<Result<_, _>>()?,
                None => random_hyperplane(curve.n(), *seed),
            };
            match hyperplane_section(&curve, &c) {
                Ok(s) => Ok(Output::pass(json!({ "pass": true, "curve": curve.to_string(), "section": to_value(&s) }))),
                Err(Error::NonGenericHyperplane(msg)) => Ok(Output {
                    json: json!({ "pass": false, "curve": curve.to_string(), "error": format!("non-generic hyperplane: {msg}") }),
                    pretty: None,
                    pass: false,
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Ordinary {
            curve,
            points,
            sections,
            seed,
            h_max,
            strong,
            subset_cap,
            tol,
        } => {
            let strong = parse_degrees(strong)?;
            if let Some(path) = points {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                let pts = parse_points(&text)?;
                let mut rep = weak_ordinary_check(&pts, *h_max, *tol)?;
                for &h in &strong {
                    rep = rep.merge(strong_ordinary_check(&pts, h, *subset_cap, *seed, *tol)?);
                }
                return Ok(Output {
                    pass: rep.pass,
                    json: to_value(&rep),
                    pretty: None,
                });
            }
            let curve = resolve_curve(curve)?;
            let opts = SectionOptions {
                count: *sections,
                seed: *seed,
                h_max: *h_max,
                strong_degrees: strong,
                subset_cap: *subset_cap,
                tol: *tol,
            };
            let rep = check_sections(&curve, &opts)?;
            Ok(Output {
                pass: rep.pass,
                json: json!({ "curve": curve.to_string(), "report": to_value(&rep) }),
                pretty: None,
            })
        }
        Command::Hilbert { n, d, shape, h_max } => {
            let s = match (n, d, shape) {
                (Some(n), Some(d), None) => solve_shape(*n, parse_big(d, "d")?)?,
                (None, None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    BettiShape::from_json(&text)?
                }
                _ => return Err(Failure::Usage("give --n and --d, or --shape".into())),
            };
            let inv = validate_shape(&s)?;
            let (d, g) = hilbert_polynomial(&s)?;
            let values: Vec<Value> = (0..=*h_max as i64).map(|h| big(&hilbert_function(&s, h))).collect();
            Ok(Output::pass(json!({
                "shape": shape_json(&s),
                "power_sums": inv.t.iter().map(big).collect::<Vec<_>>(),
                "d": big(&d),
                "g": big(&g),
                "hilbert_function": values,
            })))
        }
        Command::Fixture {
            id,
            path,
            verify_all,
            random,
        } => {
            let fx = match path {
                Some(p) => load_fixture_file(p)?,
                None => {
                    fixture_text(id).map_err(|e| Failure::Usage(e.to_string()))?;
                    load_fixture(id)?
                }
            };
            let mut out = json!({
                "id": fx.id,
                "curve": fx.curve.to_string(),
                "shape": shape_json(&fx.complex.shape()?),
                "expected": { "d": big(&fx.expected_d), "g": big(&fx.expected_g) },
            });
            if !*verify_all {
                out["complex"] = Value::String(format_complex(&fx.complex));
                return Ok(Output::pass(out));
            }
            let domain = prime_from(random.prime)?;
            let rep = verify_fixture(&fx, random.trials, random.seed, domain)?;
            out["pass"] = Value::Bool(rep.pass);
            out["d"] = rep.d.as_ref().map_or(Value::Null, big);
            out["g"] = rep.g.as_ref().map_or(Value::Null, big);
            out["report"] = to_value(&rep.report);
            Ok(Output {
                pass: rep.pass,
                json: out,
                pretty: None,
            })
        }
    }
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (code, stdout, stderr) = match dispatch(&cli.command) {
        Ok(out) => {
            let text = match (&out.pretty, cli.pretty) {
                (Some(p), true) => p.clone(),
                (None, true) => serde_json::to_string_pretty(&out.json).expect("JSON"),
                _ => serde_json::to_string(&out.json).expect("JSON"),
            };
            (if out.pass { EXIT_PASS } else { EXIT_FAIL }, text, String::new())
        }
        Err(Failure::Usage(msg)) => (
            EXIT_USAGE,
            serde_json::to_string(&json!({ "error": msg })).expect("JSON"),
            format!("error: {msg}\n\n{}", usage()),
        ),
        Err(Failure::Other(e)) => (
            EXIT_FAIL,
            serde_json::to_string(&json!({ "error": e.to_string() })).expect("JSON"),
            format!("error: {e}"),
        ),
    };
    let mut stdout = stdout;
    if !stdout.ends_with('\n') {
        stdout.push('\n');
    }
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &stdout) {
            return Outcome {
                code: EXIT_USAGE,
                stdout,
                stderr: format!("error: cannot write {}: {e}", path.display()),
            };
        }
    }
    Outcome { code, stdout, stderr }
}

fn usage() -> String {
    use clap::CommandFactory;
    Cli::command().render_usage().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("ordcurve").chain(args.iter().copied()))
    }

    #[test]
    fn pi_output() {
        let o = run_args(&["pi", "--n", "4", "--d", "15"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.trim(), r#"{"k0":2,"pi":16}"#);
    }

    #[test]
    fn shape_output() {
        let o = run_args(&["shape", "--n", "4", "--d", "5"]);
        assert_eq!(
            o.stdout.trim(),
            r#"{"n":4,"blocks":[[{"twist":2,"mult":5}],[{"twist":3,"mult":5}],[{"twist":5,"mult":1}]]}"#
        );
        let p = run_args(&["shape", "--n", "4", "--d", "5", "--pretty"]);
        assert!(p.stdout.contains("O(-5)"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["pi", "--n", "4"]).code, 2);
        assert_eq!(run_args(&["pi", "--n", "2", "--d", "5"]).code, 2);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["section", "--curve", "curve: n=4 e=5 exps=(2,3)"]).code, 2);
    }

    #[test]
    fn degenerate_section_fails() {
        let o = run_args(&["section", "--fixture", "ex1", "--coeffs", "0,0,0,1,0"]);
        assert_eq!(o.code, 1);
        assert!(o.stdout.contains("non-generic"));
    }

    #[test]
    fn deterministic() {
        let a = run_args(&["ordinary", "--fixture", "ex1", "--sections", "2"]);
        let b = run_args(&["ordinary", "--fixture", "ex1", "--sections", "2"]);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout);
    }
}
