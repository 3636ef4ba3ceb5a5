use num_bigint::BigInt;
use ordcurve::combinat::{binom_dim, genus_bound_pi};
use ordcurve::complexes::{hilbert_function, hilbert_polynomial};
use ordcurve::linalg::{numeric_rank, rank_exact};
use ordcurve::ordinary::{evaluation_matrix, weak_ordinary_check, EvalMatrix, PointConfiguration, DEFAULT_TOL};
use ordcurve::polyring::{parse_poly, Domain, HomPoly, Monomial};
use ordcurve::shapes::{add_redundancy, shape3, solve_shape, validate_shape, BettiShape};
use proptest::prelude::*;

const NVARS: usize = 4;

fn names() -> Vec<String> {
    ["X", "Y", "Z", "T"].iter().map(|s| s.to_string()).collect()
}

/// Monomial of total degree `deg` from unconstrained cut points.
fn monomial(deg: u32, cuts: &[u32]) -> Monomial {
    let mut c: Vec<u32> = cuts.iter().map(|x| x % (deg + 1)).collect();
    c.sort();
    let mut e = Vec::with_capacity(NVARS);
    let mut prev = 0;
    for &x in &c {
        e.push(x - prev);
        prev = x;
    }
    e.push(deg - prev);
    Monomial(e)
}

fn poly(deg: u32) -> impl Strategy<Value = HomPoly> {
    prop::collection::vec((prop::array::uniform3(0u32..8), -9i64..=9), 0..6).prop_map(move |terms| {
        HomPoly::from_terms(
            NVARS,
            terms
                .into_iter()
                .map(|(cuts, c)| (monomial(deg, &cuts), Domain::Rational.from_i64(c))),
        )
        .unwrap()
    })
}

fn point(lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, NVARS)
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(2), b in poly(2), c in poly(1), e in poly(3)) {
        prop_assert_eq!(a.mul(&c), c.mul(&a));
        prop_assert_eq!(a.mul(&c).mul(&e), a.mul(&c.mul(&e)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.sub(&a).is_zero());
        if !c.is_zero() {
            prop_assert_eq!(a.mul(&c).div_exact(&c), Some(a.clone()));
        }
    }

    #[test]
    fn reduction_is_a_homomorphism(a in poly(2), b in poly(2), c in poly(1)) {
        let p = Domain::Prime(32003);
        let r = |x: &HomPoly| x.reduce(p).unwrap();
        prop_assert_eq!(r(&a.mul(&c)), r(&a).mul(&r(&c)));
        prop_assert_eq!(r(&a.add(&b)), r(&a).add(&r(&b)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(2), c in poly(1), x in point(-5, 5)) {
        let pt: Vec<_> = x.iter().map(|&v| Domain::Rational.from_i64(v)).collect();
        prop_assert_eq!(a.mul(&c).eval(&pt), &a.eval(&pt) * &c.eval(&pt));
    }

    #[test]
    fn parse_print_round_trip(a in poly(3)) {
        let text = a.to_string_with(&names());
        prop_assert_eq!(parse_poly(&text, &names(), Domain::Rational).unwrap(), a);
    }

    #[test]
    fn redundancy_keeps_invariants(n in 3u32..7, k0 in 1i64..4, off in 0u64..1000, i in 1usize..6, t in 1i64..12, u in 1u64..4) {
        let lo = u64::try_from(binom_dim(n, k0)).unwrap();
        let hi = u64::try_from(binom_dim(n, k0 + 1)).unwrap();
        let d = lo + off % (hi - lo);
        let i = 1 + (i - 1) % (n as usize - 2);
        let s = solve_shape(n, d).unwrap();
        let base = validate_shape(&s).unwrap();
        if let Ok(r) = add_redundancy(&s, i, t, u) {
            let inv = validate_shape(&r).unwrap();
            prop_assert_eq!(&inv.t, &base.t);
            for h in 0..12 {
                prop_assert_eq!(hilbert_function(&r, h), hilbert_function(&s, h));
            }
        }
    }

    #[test]
    fn shape_json_round_trip(n in 3u32..8, d in 3u64..400) {
        prop_assume!(d >= n as u64);
        let s = solve_shape(n, d).unwrap();
        prop_assert_eq!(BettiShape::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn hilbert_function_agrees_with_polynomial(n in 3u32..7, d in 3u64..300) {
        prop_assume!(d >= n as u64);
        let s = solve_shape(n, d).unwrap();
        let (dd, g) = hilbert_polynomial(&s).unwrap();
        prop_assert_eq!(&dd, &BigInt::from(d));
        prop_assert_eq!(&g, &genus_bound_pi(n, d).unwrap());
        let start = s.overall_max_twist() + 1;
        for h in start..start + 10 {
            prop_assert_eq!(hilbert_function(&s, h), BigInt::from(h) * &dd - &g + 1);
        }
    }

    #[test]
    fn exact_and_numeric_ranks_agree(pts in prop::collection::vec(point(-4, 4), 3..9), h in 1u32..4) {
        prop_assume!(pts.iter().all(|p| p.iter().any(|&x| x != 0)));
        let q: Vec<Vec<_>> = pts.iter().map(|p| p.iter().map(|&v| Domain::Rational.from_i64(v)).collect()).collect();
        let Ok(cfg) = PointConfiguration::exact(q) else { return Ok(()) };
        let num = cfg.to_numeric().unwrap();
        let (EvalMatrix::Exact(a), EvalMatrix::Numeric(b)) =
            (evaluation_matrix(&cfg, h).unwrap(), evaluation_matrix(&num, h).unwrap())
        else {
            unreachable!()
        };
        let nr = numeric_rank(&b, DEFAULT_TOL);
        prop_assume!(!nr.ill_conditioned);
        prop_assert_eq!(rank_exact(&a), nr.rank);
    }

    #[test]
    fn lambda_is_monotone(pts in prop::collection::vec(point(-6, 6), 4..12)) {
        prop_assume!(pts.iter().all(|p| p.iter().any(|&x| x != 0)));
        let q: Vec<Vec<_>> = pts.iter().map(|p| p.iter().map(|&v| Domain::Rational.from_i64(v)).collect()).collect();
        let Ok(cfg) = PointConfiguration::exact(q) else { return Ok(()) };
        let d = cfg.len();
        let mut prev = 0;
        for h in 1..=4 {
            let EvalMatrix::Exact(a) = evaluation_matrix(&cfg, h).unwrap() else { unreachable!() };
            let lam = rank_exact(&a);
            prop_assert!(lam >= prev && lam <= d);
            prev = lam;
        }
        let rep = weak_ordinary_check(&cfg, Some(4), DEFAULT_TOL).unwrap();
        for r in rep.degrees.iter().filter(|r| r.lambda.is_none()) {
            prop_assert_eq!(r.expected, d);
        }
    }
}

#[test]
fn shape3_matches_general_solution() {
    for d in 3..=200u64 {
        assert_eq!(shape3(d).unwrap(), solve_shape(3, d).unwrap(), "d = {d}");
    }
}
