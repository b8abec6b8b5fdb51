//! End-to-end acceptance run: one PASS/FAIL line per criterion, each with
//! its wall-clock time and budget. Exits nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use hypergerm::core::calculus::{check_chain_rule, hyper_derivative, lift_point};
use hypergerm::core::expr::{eval, Expr};
use hypergerm::core::finite::{
    build_flat_nonconstant, check_dimensions, cusp_at, d_gamma_estimate, delta_quotients, periodize, Cusp, DgammaOptions,
    DgammaValue, IrrationalSpec,
};
use hypergerm::core::germ::{germ_add, germ_equal, germ_mul, st};
use hypergerm::core::hindman::{brute_force, search_monochromatic, verify_certificate, ColorKey, Coloring};
use hypergerm::core::secant::{residual, secant_solve, ResidualSpec};
use hypergerm::core::{BigReal, Config, HyperGerm, StdPart};
use num_bigint::BigInt;
use rand::Rng;

type Outcome = Result<(), String>;

/// Name, time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g(s: &str) -> HyperGerm {
    HyperGerm::parse(s).unwrap()
}

fn dec(s: &str, c: &Config) -> BigReal {
    BigReal::parse_decimal(s, c.precision).unwrap()
}

fn cli(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_hypergerm")).args(args).output().unwrap();
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn finite(p: StdPart) -> BigReal {
    match p {
        StdPart::Finite(v) => v,
        other => panic!("expected a finite standard part, got {:?}", other),
    }
}

fn secant_one_step() -> Outcome {
    let c = Config::default();
    let out = cli(&["solve-ode", "--residual", "Y-2*X", "--g0", "x^2+x^3", "--g1", "x^2-x^3"]);
    let mut lines = out.lines();
    let solution = lines.next().unwrap_or_default();
    ensure(lines.next() == Some("iterations 1"), || format!("cli output {:?}", out))?;
    let spec = ResidualSpec::parse("Y-2*X").unwrap();
    ensure(germ_equal(&g(solution), &g("x^2"), &c).unwrap(), || format!("solution {}", solution))?;
    let r = residual(&spec, &g(solution), &c).unwrap();
    ensure(germ_equal(&r, &HyperGerm::zero(), &c).unwrap(), || format!("residual {}", r))?;
    let lib = secant_solve(&spec, &g("x^2+x^3"), &g("x^2-x^3"), 25, &c).unwrap();
    ensure(lib.converged && lib.updates == 1, || format!("{} updates", lib.updates))
}

fn derivative_example() -> Outcome {
    let c = Config::default();
    let out = cli(&["derive", "exp(x)+x^3+cos(2*x)"]);
    let d = g(out.trim());
    ensure(germ_equal(&d, &g("exp(x)+3*x^2-2*sin(2*x)"), &c).unwrap(), || format!("derive gave {}", out.trim()))
}

fn standard_part_catalog() -> Outcome {
    let c = Config::default();
    let tol = dec("1e-30", &c);
    let cat = continuous_catalog();
    ensure(cat.len() == 20, || format!("{} catalog entries", cat.len()))?;
    for (f, v) in cat {
        let s = finite(st(&g(f), &c).unwrap());
        ensure((&s - &dec(v, &c)).abs() < tol, || format!("st({}) = {}", f, s))?;
    }
    Ok(())
}

fn well_definedness() -> Outcome {
    let c = Config::default().with_order(32);
    let cat = rewriting_catalog();
    ensure(cat.len() >= 10, || format!("{} catalog pairs", cat.len()))?;
    for (a, b) in cat {
        ensure(germ_equal(&g(a), &g(b), &c).unwrap(), || format!("{} vs {}", a, b))?;
        let (da, db) = (hyper_derivative(&g(a), &c).unwrap(), hyper_derivative(&g(b), &c).unwrap());
        ensure(germ_equal(&da, &db, &c).unwrap(), || format!("({})' vs ({})'", a, b))?;
    }
    Ok(())
}

fn positive_formulas() -> Outcome {
    let c = Config::default();
    let d = |x: &HyperGerm| hyper_derivative(x, &c).unwrap();
    let mut r = rng(101);
    for _ in 0..500 {
        let f = HyperGerm::new(entire(&mut r, 3));
        let h = HyperGerm::new(entire(&mut r, 3));
        let leibniz = germ_add(&germ_mul(&d(&f), &h), &germ_mul(&f, &d(&h)));
        ensure(germ_equal(&d(&germ_mul(&f, &h)), &leibniz, &c).unwrap(), || format!("Leibniz on {}, {}", f, h))?;
        let (a, b) = (HyperGerm::constant(small_rational(&mut r)), HyperGerm::constant(small_rational(&mut r)));
        let lhs = d(&germ_add(&germ_mul(&a, &f), &germ_mul(&b, &h)));
        let rhs = germ_add(&germ_mul(&a, &d(&f)), &germ_mul(&b, &d(&h)));
        ensure(germ_equal(&lhs, &rhs, &c).unwrap(), || format!("linearity on {}, {}", f, h))?;
    }
    for k in 1..=10 {
        let p = HyperGerm::new(Expr::Var.powi(k));
        let want = HyperGerm::new(Expr::int(k).mul(&Expr::Var.powi(k - 1)));
        ensure(germ_equal(&d(&p), &want, &c).unwrap(), || format!("power rule k={}", k))?;
    }
    let d_omega = d(&HyperGerm::omega());
    ensure(germ_equal(&d_omega, &g("1"), &c).unwrap(), || "omega' is not 1".into())?;
    ensure(!germ_equal(&d_omega, &HyperGerm::zero(), &c).unwrap(), || "omega' is 0".into())
}

fn chain_rule() -> Outcome {
    let c = Config::default();
    let mut r = rng(102);
    for _ in 0..500 {
        let f = HyperGerm::new(entire(&mut r, 3));
        let h = HyperGerm::new(entire(&mut r, 2));
        ensure(check_chain_rule(&f, &h, &c).unwrap().holds, || format!("{} o {}", f, h))?;
    }
    Ok(())
}

fn dimensions() -> Outcome {
    let c = Config::default();
    let outer = Expr::parse("exp(x)+x^3+cos(2*x)").unwrap();
    let ns: Vec<BigInt> = [2, 5, 13].map(BigInt::from).into();
    let report = check_dimensions(&outer, &IrrationalSpec::parse("phi").unwrap(), &ns, 12, &c).unwrap();
    // expected values from an independent high-precision evaluation
    let oracle = [
        "0.5193240192273524632713535284473809014535160123506372119790348878",
        "0.6455912405846797398064552638353204653550710909892611185269204480",
        "0.8441758856343393002435732514563598698205320414919682805897666611",
    ];
    let tol = dec("1e-6", &c);
    for (row, want) in report.rows.iter().zip(oracle) {
        ensure((&row.expected - &dec(want, &c)).abs() < dec("1e-50", &c), || format!("n={}: expected {}", row.n, row.expected))?;
        let err = row.abs_error.clone().ok_or_else(|| format!("n={}: {:?}", row.n, row.estimate))?;
        ensure(row.pass && err < tol, || format!("n={}: error {}", row.n, err))?;
    }
    ensure(report.rows.len() == 3 && report.pass, || "report does not pass".into())
}

fn periodized_derivative() -> Outcome {
    let c = Config::default();
    let phi = IrrationalSpec::parse("phi").unwrap();
    let f = periodize(Expr::parse("x^2").unwrap(), phi.clone());
    let est = d_gamma_estimate(&f, &phi, &2.into(), &DgammaOptions::default(), &c).unwrap();
    let want = dec("0.7639320225002103035908263312687237645593816403884742757291027546", &c);
    match est.value {
        DgammaValue::Finite { value, .. } => ensure((&value - &want).abs() < dec("1e-6", &c), || format!("estimate {}", value))?,
        other => return Err(format!("estimate {:?}", other)),
    }
    let cusp = cusp_at(&phi, &2.into(), Cusp::Jump, &c).unwrap();
    let v = d_gamma_estimate(&cusp, &phi, &2.into(), &DgammaOptions::default(), &c).unwrap().value;
    ensure(v == DgammaValue::PlusInfinite, || format!("cusp gave {:?}", v))
}

fn flat_counterexample() -> Outcome {
    let c = Config::default();
    let phi = IrrationalSpec::parse("phi").unwrap();
    let f = build_flat_nonconstant(phi.clone());
    let b = f.bind(&c);
    let v = |n: i64| b.value(&n.into()).unwrap();
    let (a, m, z) = (v(13), v(34), v(89));
    ensure(a == c.real(17) && m == c.real(46) && z >= c.real(122), || format!("values {} {} {}", a, m, z))?;
    let ws = phi.resolve(&c).small_rm_witnesses(&dec("0.1", &c), 30).unwrap();
    let vals: Vec<BigReal> = ws.iter().map(|w| b.value(w).unwrap()).collect();
    ensure(vals.windows(2).all(|p| p[0] < p[1]), || "values along witnesses are not increasing".into())?;
    ensure(vals.last().unwrap() > &c.real(100_000), || format!("largest value {}", vals.last().unwrap()))?;
    let est = d_gamma_estimate(&f, &phi, &13.into(), &DgammaOptions::default(), &c).unwrap();
    ensure(matches!(&est.value, DgammaValue::Finite { value, .. } if value.is_zero()), || format!("D at 13: {:?}", est.value))?;
    ensure(v(13 + 610) == v(13), || format!("f(623) = {}", v(623)))?;
    let s = delta_quotients(&f, &phi, &13.into(), 13, &c).unwrap();
    ensure(s.entries.iter().any(|e| e.m == 610.into() && e.quotient.is_zero()), || "no zero quotient at m = 610".into())
}

fn remainder_invariants() -> Outcome {
    let c = Config::default();
    for name in ["phi", "sqrt2", "e"] {
        let gam = IrrationalSpec::parse(name).unwrap().resolve(&c);
        let half = gam.value().mul_pow2(-1);
        let quarter = gam.value().mul_pow2(-2);
        for n in 1..=10_000i64 {
            let r = gam.rm(&n.into()).unwrap();
            ensure(!r.is_zero() && r.abs() < half, || format!("{}: rm({}) = {}", name, n, r))?;
        }
        let conv: Vec<(BigInt, BigInt)> = gam.convergents().take(25).collect();
        for (k, (p, q)) in conv.iter().enumerate() {
            let bound = &BigReal::one(c.precision) / &BigReal::from_bigint(q, c.precision);
            ensure(gam.rm(p).unwrap().abs() < bound, || format!("{}: k={} p={}", name, k + 1, p))?;
        }
        let small: Vec<&BigInt> = conv.iter().map(|(p, _)| p).filter(|p| gam.rm(p).unwrap().abs() < quarter).collect();
        for n in &small {
            for m in &small {
                let lhs = gam.rm(&(*n + *m)).unwrap();
                let rhs = &gam.rm(n).unwrap() + &gam.rm(m).unwrap();
                ensure((&lhs - &rhs).abs() < dec("1e-45", &c), || format!("{}: rm({} + {})", name, n, m))?;
            }
        }
    }
    Ok(())
}

fn hindman_desk_scale() -> Outcome {
    let c = Config::default();
    let cert = search_monochromatic(&Coloring::Modular(2), 3, 100, &c).unwrap().ok_or("mod 2: not found")?;
    ensure(cert.set == [2, 4, 6], || format!("mod 2: {:?}", cert.set))?;
    ensure(cert.sums.len() == 7 && cert.sums.iter().all(|s| s.sum % 2 == 0), || "mod 2: odd subset sum".into())?;
    ensure(verify_certificate(&Coloring::Modular(2), &cert, &c).unwrap(), || "mod 2: does not verify".into())?;
    let cert = search_monochromatic(&Coloring::Modular(3), 2, 20, &c).unwrap().ok_or("mod 3: not found")?;
    ensure(cert.set == [3, 6], || format!("mod 3: {:?}", cert.set))?;
    let mut r = rng(103);
    let table = (0..40).map(|_| ColorKey::from(r.gen_range(0..3i64))).collect();
    let colorings = [
        Coloring::Modular(2),
        Coloring::Modular(3),
        Coloring::parse("expr:floor(2*sin(n))").unwrap(),
        Coloring::parse("expr:floor(n/6)").unwrap(),
        Coloring::Table(table),
    ];
    for col in &colorings {
        for k in 1..=3usize {
            for n in (k * (k + 1) / 2) as u64..=40 {
                let got = search_monochromatic(col, k, n, &c).unwrap().map(|x| x.set);
                let want = brute_force(col, k, n, &c).unwrap();
                ensure(got == want, || format!("{:?} k={} N={}: {:?} vs {:?}", col, k, n, got, want))?;
            }
        }
    }
    Ok(())
}

fn lifted_points() -> Outcome {
    let c = Config::default();
    let mut r = rng(104);
    for _ in 0..100 {
        let x0 = dec(&format!("{}", r.gen_range(-10_000i64..=10_000) as f64 / 1000.0), &c);
        let y0 = dec(&format!("{}", r.gen_range(-10_000i64..=10_000) as f64 / 1000.0), &c);
        let l = lift_point(&x0, &y0);
        let s = finite(st(&l, &c).unwrap());
        let ds = finite(st(&hyper_derivative(&l, &c).unwrap(), &c).unwrap());
        ensure(s == x0 && ds == y0, || format!("({}, {}) gave ({}, {})", x0, y0, s, ds))?;
        ensure(eval(l.repr(), &BigReal::zero(c.precision)).unwrap() == x0, || "value at 0".into())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("secant one-step exactness", 1, secant_one_step),
        ("derivative map example", 1, derivative_example),
        ("standard part of continuous functions", 5, standard_part_catalog),
        ("derivative well-definedness on rewritings", 10, well_definedness),
        ("positive formulas", 60, positive_formulas),
        ("chain rule on entire pairs", 60, chain_rule),
        ("dimensions check over phi", 10, dimensions),
        ("periodized derivative and cusp divergence", 10, periodized_derivative),
        ("flat counterexample", 10, flat_counterexample),
        ("rm invariants", 30, remainder_invariants),
        ("Hindman desk scale", 30, hindman_desk_scale),
        ("lifted points", 5, lifted_points),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let result = result.and_then(|_| {
            ensure(took <= Duration::from_secs(*budget), || format!("took {:.2?}, budget {} s", took, budget))
        });
        match result {
            Ok(()) => println!("PASS {:>2}. {} ({:.2?}, budget {} s)", i + 1, name, took, budget),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2}. {} ({:.2?}, budget {} s): {}", i + 1, name, took, budget, e);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
