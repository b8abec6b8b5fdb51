use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::gamma::{Gamma, IrrationalSpec};
use super::seq::{periodize, sign_jump_at, BoundSeq, SeqFn};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::expr::{eval, Expr, Func};
use crate::real::BigReal;

pub const DEFAULT_DEPTH: usize = 12;

/// One row of a [`DeltaSample`].
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaEntry {
    pub m: BigInt,
    pub rm: BigReal,
    /// `(f(n+m) - f(n)) / rm(m)`
    pub quotient: BigReal,
}

/// Sampled `Δf(n)/[rm_γ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSample {
    pub n: BigInt,
    pub entries: Vec<DeltaEntry>,
    pub depth: usize,
}

impl DeltaSample {
    pub fn quotients(&self) -> impl Iterator<Item = &BigReal> {
        self.entries.iter().map(|e| &e.quotient)
    }
}

/// Witnesses `m` for the quotients at `n`: convergent numerators with
/// `|rm(n)| + |rm(m)| < γ/2`, and `|rm(m)| < start` when a start bound is given.
pub fn delta_witnesses(gamma: &Gamma, n: &BigInt, depth: usize, start: Option<&BigReal>) -> Result<Vec<(BigInt, BigReal)>> {
    let half = gamma.value().mul_pow2(-1);
    let rn = gamma.rm(n)?.abs();
    let mut out = Vec::with_capacity(depth);
    for (m, _) in gamma.convergents() {
        if out.len() == depth {
            break;
        }
        let r = gamma.rm(&m)?;
        if &rn + &r.abs() >= half || start.is_some_and(|s| r.abs() >= *s) {
            continue;
        }
        out.push((m, r));
    }
    if out.len() < depth {
        return Err(Error::PrecisionExhausted(format!("only {} witnesses available at n = {}", out.len(), n)));
    }
    Ok(out)
}

/// The single quotient `(f(n+m) - f(n)) / rm(m)`.
pub fn delta_quotient(f: &BoundSeq<'_>, gamma: &Gamma, n: &BigInt, m: &BigInt) -> Result<BigReal> {
    let d = &f.value(&(n + m))? - &f.value(n)?;
    Ok(&d / &gamma.rm(m)?)
}

fn sample(f: &SeqFn, gamma: &IrrationalSpec, n: &BigInt, depth: usize, start: Option<&BigRational>, cfg: &Config) -> Result<DeltaSample> {
    if !n.is_positive() {
        return Err(Error::InvalidInput(format!("n = {} is not positive", n)));
    }
    let g = gamma.resolve(cfg);
    let bound = f.bind(cfg);
    let start = start.map(|s| BigReal::from_rational(s, cfg.precision));
    let fn_ = bound.value(n)?;
    let mut entries = Vec::with_capacity(depth);
    for (m, rm) in delta_witnesses(&g, n, depth, start.as_ref())? {
        let quotient = &(&bound.value(&(n + &m))? - &fn_) / &rm;
        entries.push(DeltaEntry { m, rm, quotient });
    }
    Ok(DeltaSample { n: n.clone(), entries, depth })
}

/// Quotients over the first `depth` witnesses.
pub fn delta_quotients(f: &SeqFn, gamma: &IrrationalSpec, n: &BigInt, depth: usize, cfg: &Config) -> Result<DeltaSample> {
    if depth < 3 {
        return Err(Error::InvalidInput(format!("depth must be at least 3, got {}", depth)));
    }
    sample(f, gamma, n, depth, None, cfg)
}

/// Knobs for [`d_gamma_estimate`].
#[derive(Debug, Clone, PartialEq)]
pub struct DgammaOptions {
    pub depth: usize,
    /// Only witnesses with `|rm(m)|` below this are sampled.
    pub tail_eps: BigRational,
    pub finite_tolerance: BigRational,
    pub divergence_threshold: BigRational,
}

impl Default for DgammaOptions {
    fn default() -> Self {
        let ten = |k: u32| BigRational::from_integer(BigInt::from(10).pow(k));
        DgammaOptions {
            depth: DEFAULT_DEPTH,
            tail_eps: ten(9).recip(),
            finite_tolerance: ten(6).recip(),
            divergence_threshold: ten(6),
        }
    }
}

impl DgammaOptions {
    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DgammaValue {
    Finite { value: BigReal, error_bar: BigReal },
    PlusInfinite,
    MinusInfinite,
    NoLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DgammaEstimate {
    pub value: DgammaValue,
    pub sample: DeltaSample,
}

/// `D_γ f(n)`: the standard part of the sampled quotients, read off their tail.
pub fn d_gamma_estimate(f: &SeqFn, gamma: &IrrationalSpec, n: &BigInt, opts: &DgammaOptions, cfg: &Config) -> Result<DgammaEstimate> {
    if opts.depth < 5 {
        return Err(Error::InvalidInput(format!("depth must be at least 5, got {}", opts.depth)));
    }
    let sample = sample(f, gamma, n, opts.depth, Some(&opts.tail_eps), cfg)?;
    let value = classify(&sample, opts, cfg);
    Ok(DgammaEstimate { value, sample })
}

fn classify(sample: &DeltaSample, opts: &DgammaOptions, cfg: &Config) -> DgammaValue {
    let p = cfg.precision;
    let tail: Vec<&BigReal> = sample.quotients().skip(sample.entries.len() - 3).collect();
    let mut spread = BigReal::zero(p);
    for i in 0..3 {
        for j in i + 1..3 {
            spread = spread.max((tail[i] - tail[j]).abs());
        }
    }
    if spread < BigReal::from_rational(&opts.finite_tolerance, p) {
        return DgammaValue::Finite { value: tail[2].clone(), error_bar: spread };
    }
    let big = BigReal::from_rational(&opts.divergence_threshold, p);
    let sign = tail[0].signum();
    let fixed_sign = tail.iter().all(|q| q.signum() == sign);
    let growing = tail.windows(2).all(|w| w[1].abs() >= w[0].abs());
    if fixed_sign && growing && tail.iter().all(|q| q.abs() > big) {
        return if tail[0].is_negative() { DgammaValue::MinusInfinite } else { DgammaValue::PlusInfinite };
    }
    DgammaValue::NoLimit
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionRow {
    pub n: BigInt,
    pub rm: BigReal,
    pub estimate: DgammaValue,
    /// `f'(rm(n))`
    pub expected: BigReal,
    pub abs_error: Option<BigReal>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReport {
    pub outer: Expr,
    pub derivative: Expr,
    pub rows: Vec<DimensionRow>,
    pub pass: bool,
}

/// Compares `D_γ[f∘rm_γ](n)` with `f'(rm_γ(n))` for each `n`.
pub fn check_dimensions(outer: &Expr, gamma: &IrrationalSpec, ns: &[BigInt], depth: usize, cfg: &Config) -> Result<DimensionReport> {
    let derivative = outer.differentiate()?;
    let opts = DgammaOptions::default().with_depth(depth);
    let tol = BigReal::from_rational(&opts.finite_tolerance, cfg.precision);
    let g = gamma.resolve(cfg);
    let f = periodize(outer.clone(), gamma.clone());
    let mut rows = Vec::with_capacity(ns.len());
    for n in ns {
        let rm = g.rm(n)?;
        let expected = eval(&derivative, &rm)?;
        let estimate = d_gamma_estimate(&f, gamma, n, &opts, cfg)?.value;
        let abs_error = match &estimate {
            DgammaValue::Finite { value, .. } => Some((value - &expected).abs()),
            _ => None,
        };
        let pass = abs_error.as_ref().is_some_and(|e| *e < tol);
        rows.push(DimensionRow { n: n.clone(), rm, estimate, expected, abs_error, pass });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(DimensionReport { outer: outer.clone(), derivative, rows, pass })
}

/// Steepness of the cusp built by [`cusp_at`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cusp {
    /// `sgn(h)`: quotients grow like `1/|h|`.
    Jump,
    /// `sgn(h)·⌊1/|h|⌋`: quotients grow like `1/h²`.
    Steep,
}

/// A periodized sequence whose outer function is singular exactly at
/// `rm(n0)`, so `D_γ` at `n0` is `+∞`.
pub fn cusp_at(gamma: &IrrationalSpec, n0: &BigInt, kind: Cusp, cfg: &Config) -> Result<SeqFn> {
    let a = gamma.resolve(cfg).rm(n0)?;
    let jump = sign_jump_at(&a);
    let outer = match kind {
        Cusp::Jump => return Ok(periodize(jump, gamma.clone())),
        Cusp::Steep => {
            let h = Expr::Var.sub(&Expr::rational(a.to_rational()));
            jump.mul(&Expr::apply(Func::Floor, &Expr::one().div(&Expr::apply(Func::Abs, &h))))
        }
    };
    // 1/|h| is undefined at the cusp itself
    let mut overrides = BTreeMap::new();
    overrides.insert(n0.clone(), BigReal::zero(cfg.precision));
    Ok(SeqFn::Patched { base: Box::new(periodize(outer, gamma.clone())), overrides })
}

/// True when `|fast| ≥ |slow|` at every shared witness of the tail sample,
/// and strictly at the last one.
pub fn dominates(fast: &SeqFn, slow: &SeqFn, gamma: &IrrationalSpec, n: &BigInt, opts: &DgammaOptions, cfg: &Config) -> Result<bool> {
    let a = sample(fast, gamma, n, opts.depth, Some(&opts.tail_eps), cfg)?;
    let b = sample(slow, gamma, n, opts.depth, Some(&opts.tail_eps), cfg)?;
    let pairs: Vec<_> = a.entries.iter().zip(&b.entries).collect();
    debug_assert!(pairs.iter().all(|(x, y)| x.m == y.m));
    let weak = pairs.iter().all(|(x, y)| x.quotient.abs() >= y.quotient.abs());
    let (x, y) = pairs.last().unwrap();
    Ok(weak && x.quotient.abs() > y.quotient.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> IrrationalSpec {
        IrrationalSpec::parse(s).unwrap()
    }

    fn dec(s: &str) -> BigReal {
        BigReal::parse_decimal(s, Config::default().precision).unwrap()
    }

    fn finite(v: &DgammaValue) -> &BigReal {
        match v {
            DgammaValue::Finite { value, .. } => value,
            other => panic!("expected a finite value, got {:?}", other),
        }
    }

    #[test]
    fn square_quotients_approach_twice_the_remainder() {
        let c = Config::default();
        let phi = spec("phi");
        let f = periodize(Expr::parse("x^2").unwrap(), phi.clone());
        let s = delta_quotients(&f, &phi, &2.into(), 4, &c).unwrap();
        assert_eq!(s.entries.len(), 4);
        let a2 = dec("0.7639320225002103035908263312687237645593816403884742757291027546");
        for e in &s.entries {
            // (a+h)^2 - a^2 = (2a + h) h
            assert!((&e.quotient - &(&a2 + &e.rm)).abs() < dec("1e-50"), "m = {}", e.m);
        }
        let est = d_gamma_estimate(&f, &phi, &2.into(), &DgammaOptions::default(), &c).unwrap();
        assert!((finite(&est.value) - &a2).abs() < dec("1e-6"));
    }

    #[test]
    fn constant_and_flat_sequences() {
        let c = Config::default();
        let phi = spec("phi");
        let seven = SeqFn::ExprSeq(Expr::int(7));
        let s = delta_quotients(&seven, &phi, &5.into(), 6, &c).unwrap();
        assert!(s.quotients().all(BigReal::is_zero));

        let flat = super::super::seq::build_flat_nonconstant(phi.clone());
        let s = delta_quotients(&flat, &phi, &13.into(), 13, &c).unwrap();
        let at610 = s.entries.iter().find(|e| e.m == 610.into()).unwrap();
        assert!(at610.quotient.is_zero());
        let est = d_gamma_estimate(&flat, &phi, &13.into(), &DgammaOptions::default(), &c).unwrap();
        assert_eq!(est.value, DgammaValue::Finite { value: BigReal::zero(c.precision), error_bar: BigReal::zero(c.precision) });
    }

    #[test]
    fn witnesses_respect_the_guard() {
        let c = Config::default();
        let g = spec("phi").resolve(&c);
        let half = g.value().mul_pow2(-1);
        let rn = g.rm(&2.into()).unwrap().abs();
        let w = delta_witnesses(&g, &2.into(), 12, None).unwrap();
        let mut last = half.clone();
        for (m, r) in &w {
            assert!(&rn + &r.abs() < half, "m = {}", m);
            assert!(r.abs() < last);
            last = r.abs();
        }
        assert!(matches!(delta_quotients(&SeqFn::ExprSeq(Expr::one()), &spec("phi"), &2.into(), 2, &c), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn dimension_examples() {
        let c = Config::default();
        let r = check_dimensions(&Expr::parse("x^2").unwrap(), &spec("sqrt2"), &[3.into()], 12, &c).unwrap();
        assert!(r.pass);
        let want = dec("0.3431457505076198047932451031612076857213124984922077072932810480");
        assert!((finite(&r.rows[0].estimate) - &want).abs() < dec("1e-6"));

        let r = check_dimensions(&Expr::int(4), &spec("e"), &[1.into(), 7.into()], 12, &c).unwrap();
        assert!(r.pass && r.rows.iter().all(|row| row.abs_error.as_ref().unwrap().is_zero()));

        let outer = Expr::parse("exp(x)+x^3+cos(2*x)").unwrap();
        let r = check_dimensions(&outer, &spec("phi"), &[2.into(), 5.into(), 13.into()], 12, &c).unwrap();
        assert!(r.pass, "{:?}", r.rows);
        let want = dec("0.6455912405846797398064552638353204653550710909892611185269204480");
        assert!((&r.rows[1].expected - &want).abs() < dec("1e-50"));
    }

    #[test]
    fn cusps_diverge_and_compare() {
        let c = Config::default();
        let phi = spec("phi");
        let opts = DgammaOptions::default();
        for n0 in [2, 13] {
            let jump = cusp_at(&phi, &n0.into(), Cusp::Jump, &c).unwrap();
            let bound = jump.bind(&c);
            assert!(bound.value(&n0.into()).unwrap().is_zero());
            let est = d_gamma_estimate(&jump, &phi, &n0.into(), &opts, &c).unwrap();
            assert_eq!(est.value, DgammaValue::PlusInfinite);
            let steep = cusp_at(&phi, &n0.into(), Cusp::Steep, &c).unwrap();
            assert_eq!(d_gamma_estimate(&steep, &phi, &n0.into(), &opts, &c).unwrap().value, DgammaValue::PlusInfinite);
            assert!(dominates(&steep, &jump, &phi, &n0.into(), &opts, &c).unwrap());
            assert!(!dominates(&jump, &steep, &phi, &n0.into(), &opts, &c).unwrap());
        }
        // negated cusp
        let a = phi.resolve(&c).rm(&2.into()).unwrap();
        let down = periodize(sign_jump_at(&a).neg(), phi.clone());
        assert_eq!(d_gamma_estimate(&down, &phi, &2.into(), &opts, &c).unwrap().value, DgammaValue::MinusInfinite);
    }

    #[test]
    fn oscillating_quotients_have_no_limit() {
        let c = Config::default();
        let phi = spec("phi");
        // |x - rm(2)|: quotients alternate between +1 and -1 with the witness sign
        let a = phi.resolve(&c).rm(&2.into()).unwrap();
        let outer = Expr::apply(Func::Abs, &Expr::Var.sub(&Expr::rational(a.to_rational())));
        let f = periodize(outer, phi.clone());
        let est = d_gamma_estimate(&f, &phi, &2.into(), &DgammaOptions::default(), &c).unwrap();
        assert_eq!(est.value, DgammaValue::NoLimit);
    }
}
