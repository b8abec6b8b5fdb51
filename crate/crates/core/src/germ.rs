//! Germs at 0⁺ and their ordered-field operations.
//!
//! Two germs are equal when their representatives agree on some `(0, δ)`.
//! For Laurent-expandable representatives this is decided (up to the
//! truncation order) by expanding the difference, then confirmed by
//! sampling both sides at `x = 10^-3, 10^-6, 10^-9, 10^-12`.

use alloc::boxed::Box;
use core::cmp::Ordering;
use core::fmt;

use num_rational::BigRational;
use once_cell::race::OnceBox;

use crate::config::{pow10, Config};
use crate::error::{Error, Result};
use crate::expr::{eval, Expr};
use crate::real::BigReal;
use crate::series::{expand, LaurentSeries};

/// Decimal exponents of the sample points used to confirm equality.
pub const SAMPLE_EXPONENTS: [i64; 4] = [3, 6, 9, 12];

struct Cached {
    digits: u32,
    order: u32,
    series: Result<LaurentSeries>,
}

/// A germ at 0⁺ given by a representative expression.
pub struct HyperGerm {
    repr: Expr,
    smooth: bool,
    cache: OnceBox<Cached>,
}

impl Clone for HyperGerm {
    fn clone(&self) -> Self {
        HyperGerm::new(self.repr.clone())
    }
}

impl fmt::Debug for HyperGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HyperGerm({})", self.repr)
    }
}

impl fmt::Display for HyperGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

impl From<Expr> for HyperGerm {
    fn from(e: Expr) -> Self {
        HyperGerm::new(e)
    }
}

impl HyperGerm {
    pub fn new(repr: Expr) -> Self {
        let repr = repr.canonical();
        let smooth = repr.is_smooth();
        HyperGerm { repr, smooth, cache: OnceBox::new() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(HyperGerm::new(Expr::parse(text)?))
    }

    /// The germ of the identity, a positive infinitesimal.
    pub fn omega() -> Self {
        HyperGerm::new(Expr::Var)
    }

    pub fn constant(c: BigRational) -> Self {
        HyperGerm::new(Expr::Const(c))
    }

    pub fn zero() -> Self {
        HyperGerm::new(Expr::zero())
    }

    pub fn repr(&self) -> &Expr {
        &self.repr
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    /// Laurent expansion at the configured order; cached for the first
    /// configuration it is requested with.
    pub fn series(&self, cfg: &Config) -> Result<LaurentSeries> {
        if !self.smooth {
            return Err(Error::NonSmoothExpression(self.repr.first_non_smooth().map_or("abs", |f| f.name())));
        }
        let digits = cfg.precision.get();
        let cached = self.cache.get_or_init(|| {
            Box::new(Cached { digits, order: cfg.order, series: expand(&self.repr, cfg) })
        });
        if cached.digits == digits && cached.order == cfg.order {
            cached.series.clone()
        } else {
            expand(&self.repr, cfg)
        }
    }

    pub fn magnitude(&self, cfg: &Config) -> Result<Magnitude> {
        Ok(match self.series(cfg)?.valuation() {
            Some(v) if v >= 1 => Magnitude::Infinitesimal,
            Some(v) if v <= -1 => Magnitude::Infinite,
            Some(_) => Magnitude::Appreciable,
            None => Magnitude::Infinitesimal,
        })
    }
}

/// Size class of a germ relative to the reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Magnitude {
    /// Valuation ≥ 1, or zero through the truncation order.
    Infinitesimal,
    /// Valuation 0: finite and not infinitesimal.
    Appreciable,
    Infinite,
}

/// Standard part of a germ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StdPart {
    Finite(BigReal),
    PlusInfinite,
    MinusInfinite,
}

/// Outcome of comparing two germs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermVerdict {
    pub equal: bool,
    /// Truncation order the verdict rests on.
    pub confidence: u32,
    /// Lowest exponent at which the expansions differ.
    pub first_difference: Option<i64>,
    /// Sign of `a - b` near 0⁺.
    pub sign: Ordering,
}

/// Full comparison of `a` and `b`.
pub fn germ_verdict(a: &HyperGerm, b: &HyperGerm, cfg: &Config) -> Result<GermVerdict> {
    a.series(cfg)?;
    b.series(cfg)?;
    let diff = HyperGerm::new(a.repr.sub(&b.repr));
    let s = diff.series(cfg)?;
    if let Some(v) = s.valuation() {
        let sign = s.leading().map_or(Ordering::Equal, BigReal::signum);
        return Ok(GermVerdict { equal: false, confidence: cfg.order, first_difference: Some(v), sign });
    }
    match sample_disagreement(&a.repr, &b.repr, cfg)? {
        None => Ok(GermVerdict { equal: true, confidence: cfg.order, first_difference: None, sign: Ordering::Equal }),
        Some(sign) => Ok(GermVerdict { equal: false, confidence: cfg.order, first_difference: None, sign }),
    }
}

/// Sign of `a - b` at the first sample point where the two values differ by
/// more than the sample tolerance, relative to their size.
fn sample_disagreement(a: &Expr, b: &Expr, cfg: &Config) -> Result<Option<Ordering>> {
    let one = BigReal::one(cfg.precision);
    for d in SAMPLE_EXPONENTS.iter().rev() {
        let x = pow10(-d, cfg.precision);
        let (va, vb) = match (eval(a, &x), eval(b, &x)) {
            (Ok(va), Ok(vb)) => (va, vb),
            // a removable singularity exactly at a sample point says nothing
            (Err(Error::Domain(_)), _) | (_, Err(Error::Domain(_))) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        let delta = &va - &vb;
        let scale = one.clone().max(va.abs()).max(vb.abs());
        if delta.abs() > &cfg.sample_tolerance * &scale {
            return Ok(Some(delta.signum()));
        }
    }
    Ok(None)
}

pub fn germ_equal(a: &HyperGerm, b: &HyperGerm, cfg: &Config) -> Result<bool> {
    Ok(germ_verdict(a, b, cfg)?.equal)
}

/// Order of the germs near 0⁺.
pub fn germ_compare(a: &HyperGerm, b: &HyperGerm, cfg: &Config) -> Result<Ordering> {
    let v = germ_verdict(a, b, cfg)?;
    Ok(if v.equal { Ordering::Equal } else { v.sign })
}

pub fn st(g: &HyperGerm, cfg: &Config) -> Result<StdPart> {
    let s = g.series(cfg)?;
    Ok(match s.valuation() {
        None => StdPart::Finite(BigReal::zero(cfg.precision)),
        Some(v) if v > 0 => StdPart::Finite(BigReal::zero(cfg.precision)),
        Some(0) => StdPart::Finite(s.leading().unwrap().clone()),
        Some(_) => {
            if s.leading().unwrap().is_negative() {
                StdPart::MinusInfinite
            } else {
                StdPart::PlusInfinite
            }
        }
    })
}

pub fn germ_add(a: &HyperGerm, b: &HyperGerm) -> HyperGerm {
    HyperGerm::new(a.repr.add(&b.repr))
}

pub fn germ_sub(a: &HyperGerm, b: &HyperGerm) -> HyperGerm {
    HyperGerm::new(a.repr.sub(&b.repr))
}

pub fn germ_neg(a: &HyperGerm) -> HyperGerm {
    HyperGerm::new(a.repr.neg())
}

pub fn germ_mul(a: &HyperGerm, b: &HyperGerm) -> HyperGerm {
    HyperGerm::new(a.repr.mul(&b.repr))
}

pub fn germ_div(a: &HyperGerm, b: &HyperGerm, cfg: &Config) -> Result<HyperGerm> {
    if germ_equal(b, &HyperGerm::zero(), cfg)? {
        return Err(Error::DivisionByZeroGerm);
    }
    Ok(HyperGerm::new(a.repr.div(&b.repr)))
}
