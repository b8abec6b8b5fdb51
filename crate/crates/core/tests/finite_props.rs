mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use hypergerm_core::expr::eval;
use hypergerm_core::finite::*;
use hypergerm_core::{BigReal, Config, Expr};
use num_bigint::BigInt;
use rand::Rng;

const GAMMAS: [&str; 3] = ["phi", "sqrt2", "e"];

fn spec(s: &str) -> IrrationalSpec {
    IrrationalSpec::parse(s).unwrap()
}

fn dec(s: &str, c: &Config) -> BigReal {
    BigReal::parse_decimal(s, c.precision).unwrap()
}

#[test]
fn remainders_lie_strictly_inside_half_a_period() {
    let c = Config::default();
    for name in GAMMAS {
        let g = spec(name).resolve(&c);
        let half = g.value().mul_pow2(-1);
        for n in 1..=10_000i64 {
            let r = g.rm(&n.into()).unwrap();
            assert!(!r.is_zero(), "{} n={}", name, n);
            assert!(r.abs() < half, "{} n={}: {}", name, n, r);
        }
    }
}

#[test]
fn small_remainders_add() {
    let c = Config::default();
    let tol = dec("1e-45", &c);
    let mut r = rng(20);
    for name in GAMMAS {
        let g = spec(name).resolve(&c);
        let quarter = g.value().mul_pow2(-2);
        let small = |n: &BigInt| g.rm(n).unwrap().abs() < quarter;
        let mut ns: Vec<BigInt> = g.convergents().take(20).map(|(p, _)| p).filter(|p| small(p)).collect();
        ns.extend((0..200).map(|_| BigInt::from(r.gen_range(1..=10_000i64))).filter(|n| small(n)));
        let mut checked = 0;
        for n in &ns {
            for m in &ns {
                let sum = &g.rm(n).unwrap() + &g.rm(m).unwrap();
                assert!((&g.rm(&(n + m)).unwrap() - &sum).abs() < tol, "{}: {} + {}", name, n, m);
                checked += 1;
            }
        }
        assert!(checked > 1000, "{}: only {} pairs", name, checked);
    }
}

#[test]
fn convergent_numerators_are_good_witnesses() {
    let c = Config::default();
    for name in GAMMAS {
        let g = spec(name).resolve(&c);
        let mut last: Option<BigReal> = None;
        for (k, (p, q)) in g.convergents().take(25).enumerate() {
            let r = g.rm(&p).unwrap();
            let bound = &BigReal::one(c.precision) / &BigReal::from_bigint(&q, c.precision);
            assert!(r.abs() < bound, "{} k={}: |rm({})| >= 1/{}", name, k, p, q);
            if let Some(prev) = &last {
                assert!(r.abs() < prev.abs(), "{} k={}: not decreasing", name, k);
                assert_ne!(r.signum(), prev.signum(), "{} k={}: same sign twice", name, k);
            }
            last = Some(r);
        }
        let eps = dec("1e-6", &c);
        for w in g.small_rm_witnesses(&eps, 5).unwrap() {
            assert!(g.rm(&w).unwrap().abs() < eps);
        }
    }
}

/// A sequence that agrees with `f` on `set` and is `n^3` elsewhere.
fn agreeing_on(f: &SeqFn, set: &BTreeSet<BigInt>, c: &Config) -> SeqFn {
    let bound = f.bind(c);
    let overrides: BTreeMap<BigInt, BigReal> = set.iter().map(|n| (n.clone(), bound.value(n).unwrap())).collect();
    SeqFn::Patched { base: Box::new(SeqFn::ExprSeq(Expr::parse("x^3").unwrap())), overrides }
}

#[test]
fn quotients_only_see_the_sequence_on_the_sampled_set() {
    let c = Config::default();
    for name in GAMMAS {
        let gs = spec(name);
        let g = gs.resolve(&c);
        let f = periodize(Expr::parse("sin(x)+x^2").unwrap(), gs.clone());
        let ws = g.small_rm_witnesses(&dec("0.1", &c), 8).unwrap();
        // closure of a few base points under adding one witness
        let mut set: BTreeSet<BigInt> = ws.iter().cloned().collect();
        for n in [1, 2, 5, 7] {
            set.insert(n.into());
        }
        let base: Vec<BigInt> = set.iter().cloned().collect();
        for n in &base {
            for m in &ws {
                set.insert(n + m);
            }
        }
        let h = agreeing_on(&f, &set, &c);
        let (bf, bh) = (f.bind(&c), h.bind(&c));
        let mut checked = 0;
        for n in &base {
            for (m, _) in delta_witnesses(&g, n, 6, None).unwrap() {
                if !set.contains(&(n + &m)) {
                    continue;
                }
                let (a, b) = (delta_quotient(&bf, &g, n, &m).unwrap(), delta_quotient(&bh, &g, n, &m).unwrap());
                assert_eq!(a, b, "{}: n={} m={}", name, n, m);
                checked += 1;
            }
        }
        assert!(checked >= 10, "{}: only {} pairs", name, checked);
        // off the set the two sequences differ
        let outside = BigInt::from(3);
        assert!(!set.contains(&outside));
        assert_ne!(bf.value(&outside).unwrap(), bh.value(&outside).unwrap());
    }
}

#[test]
fn estimates_match_the_outer_derivative() {
    let c = Config::default();
    let tol = dec("1e-6", &c);
    let opts = DgammaOptions::default();
    let mut r = rng(21);
    for i in 0..30 {
        let name = GAMMAS[i % 3];
        let gs = spec(name);
        let outer = entire(&mut r, 2);
        let d = outer.differentiate().unwrap();
        let n = BigInt::from(r.gen_range(1..=500i64));
        let rm = gs.resolve(&c).rm(&n).unwrap();
        let want = eval(&d, &rm).unwrap();
        let f = periodize(outer.clone(), gs.clone());
        match d_gamma_estimate(&f, &gs, &n, &opts, &c).unwrap().value {
            DgammaValue::Finite { value, .. } => {
                assert!((&value - &want).abs() <= &tol * &BigReal::one(c.precision).max(want.abs()), "{} over {} at {}", outer, name, n)
            }
            other => panic!("{} over {} at {}: {:?}", outer, name, n, other),
        }
    }
}

#[test]
fn flat_sequence_is_unbounded_with_zero_derivative() {
    let c = Config::default();
    for name in GAMMAS {
        let gs = spec(name);
        let g = gs.resolve(&c);
        let f = build_flat_nonconstant(gs.clone());
        let bound = f.bind(&c);
        let quarter = g.value().mul_pow2(-2);
        let ws: Vec<BigInt> = g.small_rm_witnesses(&quarter, 40).unwrap();
        let values: Vec<BigReal> = ws.iter().map(|w| bound.value(w).unwrap()).collect();
        assert!(values.windows(2).all(|v| v[0] < v[1]), "{}: {:?}", name, values);
        assert!(values.last().unwrap() > &c.real(1_000_000), "{}", name);
        for n in &ws[1..6] {
            let est = d_gamma_estimate(&f, &gs, n, &DgammaOptions::default(), &c).unwrap();
            match est.value {
                DgammaValue::Finite { value, .. } => assert!(value.is_zero(), "{} at {}", name, n),
                other => panic!("{} at {}: {:?}", name, n, other),
            }
        }
    }
    let flat = build_flat_nonconstant(spec("phi"));
    let bound = flat.bind(&c);
    let ns = [13i64, 34, 89];
    let vals: Vec<BigReal> = ns.iter().map(|n| bound.value(&(*n).into()).unwrap()).collect();
    assert_eq!(vals[..2], [c.real(17), c.real(46)]);
    assert!(vals[2] >= c.real(122));
    assert_eq!(bound.value(&(13 + 610).into()).unwrap(), c.real(17));
}

#[test]
fn cusps_diverge_and_steeper_ones_dominate() {
    let c = Config::default();
    let opts = DgammaOptions::default();
    for name in GAMMAS {
        let gs = spec(name);
        for n0 in [1i64, 3, 8, 21] {
            let n0 = BigInt::from(n0);
            let jump = cusp_at(&gs, &n0, Cusp::Jump, &c).unwrap();
            let steep = cusp_at(&gs, &n0, Cusp::Steep, &c).unwrap();
            for f in [&jump, &steep] {
                let v = d_gamma_estimate(f, &gs, &n0, &opts, &c).unwrap().value;
                assert_eq!(v, DgammaValue::PlusInfinite, "{} at {}", name, n0);
            }
            assert!(dominates(&steep, &jump, &gs, &n0, &opts, &c).unwrap(), "{} at {}", name, n0);
            assert!(!dominates(&jump, &steep, &gs, &n0, &opts, &c).unwrap());
            // a smooth function is dominated by either cusp
            let smooth = periodize(Expr::parse("exp(x)").unwrap(), gs.clone());
            assert!(dominates(&jump, &smooth, &gs, &n0, &opts, &c).unwrap());
        }
    }
}
