//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use ordcurve::combinat::{binom_dim, caliber, genus_bound_closed, genus_bound_pi, genus_bound_sum};
use ordcurve::complexes::{
    check_complex, hilbert_function, hilbert_polynomial, ideal_hilbert_function, probabilistic_exactness,
    random_hilbert_burch,
};
use ordcurve::curves::hyperplane_section;
use ordcurve::eagon_northcott::{build_en, en_size, en_size_factorial, en_sizes, random_phi};
use ordcurve::fixtures::{fixture_text, load_fixture, parse_fixture, verify_fixture};
use ordcurve::ordinary::{
    check_sections, strong_ordinary_check, PointConfiguration, SectionOptions, DEFAULT_SUBSET_CAP, DEFAULT_TOL,
};
use ordcurve::polyring::Domain;
use ordcurve::shapes::{shape3, solve_shape, validate_shape, BettiShape, Provenance, TwistMult};
use ordcurve::Error;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn p32003() -> Domain {
    Domain::Prime(32003)
}

fn err(e: Error) -> String {
    e.to_string()
}

fn pi_consistency() -> Outcome {
    let mut count = 0;
    for n in 3..=8u32 {
        for d in n as u64..=500 {
            let a = genus_bound_sum(n, d).map_err(err)?;
            let b = genus_bound_closed(n, d).map_err(err)?;
            ensure!(a == b, "n={n} d={d}: sum {a} != closed {b}");
            count += 1;
        }
    }
    for (n, d, want) in [(3, 3, 0), (4, 5, 1), (4, 15, 16)] {
        let got = genus_bound_pi(n, d as u64).map_err(err)?;
        ensure!(got == BigInt::from(want), "pi'({n},{d}) = {got}, expected {want}");
    }
    Ok(format!("{count} pairs agree, spot values ok"))
}

fn shape_sweep() -> Outcome {
    let mut count = 0;
    for n in 3..=7u32 {
        for k0 in 1..=4i64 {
            let lo = u64::try_from(binom_dim(n, k0)).unwrap();
            let hi = u64::try_from(binom_dim(n, k0 + 1)).unwrap();
            for d in lo..hi {
                let s = solve_shape(n, d).map_err(|e| format!("n={n} d={d}: {e}"))?;
                let inv = validate_shape(&s).map_err(|e| format!("n={n} d={d}: {e}"))?;
                let pi = genus_bound_pi(n, d).map_err(err)?;
                ensure!(
                    inv.d == BigInt::from(d) && inv.g == pi,
                    "n={n} d={d}: shape gives ({}, {}), expected ({d}, {pi})",
                    inv.d,
                    inv.g
                );
                count += 1;
            }
        }
    }
    Ok(format!("{count} shapes validated"))
}

fn en_identity() -> Outcome {
    for n in 3..=7u32 {
        for k0 in 1..=5u64 {
            for i in 1..n {
                ensure!(
                    en_size(n, k0, i) == en_size_factorial(n, k0, i),
                    "n={n} k0={k0} i={i}: closed forms differ"
                );
            }
            let y = en_sizes(n, k0).map_err(err)?;
            let s = solve_shape(n, binom_dim(n, k0 as i64)).map_err(err)?;
            for (i, t) in y.iter().enumerate() {
                ensure!(
                    s.block(i + 1) == [*t],
                    "n={n} k0={k0} E_{}: {:?} vs {:?}",
                    i + 1,
                    s.block(i + 1),
                    t
                );
            }
        }
    }
    Ok("n in 3..=7, k0 in 1..=5".into())
}

fn en_soundness() -> Outcome {
    let p = p32003();
    let mut count = 0;
    for n in [3u32, 4] {
        for k0 in [1u64, 2] {
            let want_d = binom_dim(n, k0 as i64);
            let want_g = genus_bound_pi(n, want_d.clone()).map_err(err)?;
            for seed in 0..100u64 {
                let ctx = |e: String| format!("n={n} k0={k0} seed={seed}: {e}");
                let input = random_phi(n, k0, p, seed).map_err(|e| ctx(e.to_string()))?;
                let c = build_en(&input).map_err(|e| ctx(e.to_string()))?;
                ensure!(check_complex(&c).pass, "{}", ctx("composite nonzero".into()));
                let ex = probabilistic_exactness(&c, 20, seed, p).map_err(|e| ctx(e.to_string()))?;
                ensure!(ex.pass, "{}", ctx("not exact".into()));
                let (d, g) = hilbert_polynomial(&c.shape().map_err(err)?).map_err(err)?;
                ensure!(d == want_d && g == want_g, "{}", ctx(format!("(d, g) = ({d}, {g})")));
                count += 1;
            }
        }
    }
    Ok(format!("{count}/400 complexes pass"))
}

fn fixture_pipeline(id: &str, d: i64, g: i64) -> Outcome {
    let fx = load_fixture(id).map_err(err)?;
    let rational = verify_fixture(&fx, 20, 1, Domain::Rational).map_err(err)?;
    let modular = verify_fixture(&fx, 20, 1, p32003()).map_err(err)?;
    for rep in [&rational, &modular] {
        ensure!(
            rep.pass,
            "{}",
            serde_json::to_string(&rep.report.failures().collect::<Vec<_>>()).unwrap()
        );
        ensure!(
            rep.d == Some(BigInt::from(d)) && rep.g == Some(BigInt::from(g)),
            "(d, g) = ({:?}, {:?})",
            rep.d,
            rep.g
        );
    }
    Ok(format!("(d, g) = ({d}, {g}), {} checks", rational.report.checks.len()))
}

fn localization(id: &str) -> Outcome {
    let fx = load_fixture(id).map_err(err)?;
    let c = &fx.complex;
    let d1 = c.differential(1);
    let (row, col, entry) = d1.nonzero_entries().into_iter().next().ok_or("d1 is zero")?;
    let patched = c.with_entry(1, row, col, entry.add(entry)).map_err(err)?;
    let rep = check_complex(&patched);
    ensure!(!rep.pass, "perturbed complex passes");
    let f = rep.failures().find(|f| f.location == "d0*d1").ok_or("no d0*d1 failure")?;
    ensure!(f.col == Some(col) && !f.terms.is_empty(), "failure not localized: {f:?}");
    Ok(format!("d1[{row}][{col}] doubled -> d0*d1 col {col}, {} terms", f.terms.len()))
}

fn ex2_pipeline() -> Outcome {
    let a = fixture_pipeline("ex2", 15, 16)?;
    let b = localization("ex2")?;
    Ok(format!("{a}; {b}"))
}

fn ordinariness() -> Outcome {
    let mut summary = vec![];
    for (id, strong) in [("ex1", vec![1]), ("ex2", vec![1, 2])] {
        let fx = load_fixture(id).map_err(err)?;
        let opts = SectionOptions {
            count: 20,
            seed: 1,
            strong_degrees: strong,
            tol: DEFAULT_TOL,
            ..SectionOptions::default()
        };
        let rep = check_sections(&fx.curve, &opts).map_err(err)?;
        ensure!(rep.sections.len() == 20, "{id}: {} sections", rep.sections.len());
        for s in &rep.sections {
            let r = &s.report;
            ensure!(r.pass, "{id} section {}: {}", s.index, serde_json::to_string(r).unwrap());
            for sub in &r.strong {
                ensure!(sub.exhaustive, "{id} section {}: h={} not exhaustive", s.index, sub.h);
            }
        }
        let tested: usize = rep.sections[0].report.strong.iter().map(|s| s.subsets_tested).sum();
        summary.push(format!("{id}: 20 sections, {tested} subsets each"));
    }
    Ok(summary.join("; "))
}

fn tm(twist: i64, mult: u64) -> TwistMult {
    TwistMult { twist, mult }
}

fn n3_catalogue() -> Outcome {
    let expected = [
        (3, vec![vec![tm(2, 3)], vec![tm(3, 2)]]),
        (4, vec![vec![tm(2, 2)], vec![tm(4, 1)]]),
        (5, vec![vec![tm(3, 2), tm(2, 1)], vec![tm(4, 2)]]),
    ];
    for (d, blocks) in expected {
        let want = BettiShape::new(3, blocks, Provenance::Solved).map_err(err)?;
        let got = shape3(d).map_err(err)?;
        ensure!(got == want, "d={d}: shape3 gives {got}, expected {want}");
    }
    let p = p32003();
    for d in 3..=12u64 {
        let s = shape3(d).map_err(err)?;
        ensure!(s == solve_shape(3, d).map_err(err)?, "d={d}: shape3 != solve_shape");
        let pi = genus_bound_pi(3, d).map_err(err)?;
        for seed in 0..10u64 {
            let ctx = |e: String| format!("d={d} seed={seed}: {e}");
            let c = random_hilbert_burch(&s, p, seed).map_err(|e| ctx(e.to_string()))?;
            ensure!(check_complex(&c).pass, "{}", ctx("composite nonzero".into()));
            let ex = probabilistic_exactness(&c, 5, seed, p).map_err(|e| ctx(e.to_string()))?;
            ensure!(ex.pass, "{}", ctx("not exact".into()));
            let (dd, g) = hilbert_polynomial(&c.shape().map_err(err)?).map_err(err)?;
            ensure!(dd == BigInt::from(d) && g == pi, "{}", ctx(format!("(d, g) = ({dd}, {g})")));
            let top = caliber(3, d).map_err(err)? as u32 + 3;
            for h in 0..=top {
                let direct = ideal_hilbert_function(&c.generators(), 4, h, p).map_err(err)?;
                ensure!(
                    BigInt::from(direct) == hilbert_function(&s, h as i64),
                    "{}",
                    ctx(format!("ideal H({h}) = {direct}"))
                );
            }
        }
    }
    Ok("twisted cubic, elliptic quartic, quintic; 100 Hilbert-Burch curves".into())
}

fn negative_controls() -> Outcome {
    let text = fixture_text("ex1").map_err(err)?.replace("[0, 0, -T, Z, -Y]", "[0, 0, -T, T, -Y]");
    ensure!(text != fixture_text("ex1").unwrap(), "patch did not apply");
    let fx = parse_fixture(&text).map_err(err)?;
    let rep = check_complex(&fx.complex);
    ensure!(!rep.pass, "perturbed ex1 passes check_complex");
    ensure!(rep.failures().all(|f| f.row.is_some() && f.col.is_some()), "unlocalized failure");

    let q = |v: &[i64]| v.iter().map(|&x| Domain::Rational.from_i64(x)).collect::<Vec<_>>();
    let pts = PointConfiguration::exact(vec![
        q(&[1, 0, 0, 0]),
        q(&[0, 1, 0, 0]),
        q(&[0, 0, 1, 0]),
        q(&[1, 1, 1, 0]),
        q(&[1, 2, 3, 4]),
        q(&[3, 1, 4, -5]),
    ])
    .map_err(err)?;
    let want = vec![vec![0, 1, 2, 3]];
    for cfg in [pts.clone(), pts.to_numeric().map_err(err)?] {
        let s = strong_ordinary_check(&cfg, 1, DEFAULT_SUBSET_CAP, 1, DEFAULT_TOL).map_err(err)?;
        ensure!(!s.pass && s.strong[0].failures == want, "failures {:?}", s.strong[0].failures);
    }

    match hyperplane_section(&fx.curve, &[0.0, 0.0, 0.0, 1.0, 0.0]) {
        Err(Error::NonGenericHyperplane(_)) => {}
        other => return Err(format!("T = 0 not rejected: {other:?}")),
    }
    Ok("perturbed ex1 fails, coplanar subset [0,1,2,3] found, T = 0 rejected".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("pi' summation vs closed form", pi_consistency),
        ("shape sweep", shape_sweep),
        ("Eagon-Northcott sizes", en_identity),
        ("Eagon-Northcott soundness", en_soundness),
        ("fixture ex1 pipeline", || {
            let a = fixture_pipeline("ex1", 5, 1)?;
            let b = localization("ex1")?;
            Ok(format!("{a}; {b}"))
        }),
        ("fixture ex2 pipeline", ex2_pipeline),
        ("ordinariness of sections", ordinariness),
        ("n = 3 catalogue", n3_catalogue),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
