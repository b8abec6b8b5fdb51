use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::Signed;

use super::gamma::{Gamma, IrrationalSpec};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::expr::{eval, Expr, Template};
use crate::real::BigReal;

/// A real sequence indexed by the positive integers.
#[derive(Debug, Clone)]
pub enum SeqFn {
    /// An expression evaluated at `x = n`.
    ExprSeq(Expr),
    /// `n ↦ outer(rm_γ(n))`: a γ-periodic extension restricted to ℕ.
    Periodized { outer: Expr, gamma: IrrationalSpec },
    /// `n ↦ ⌊1/|rm_γ(n)|⌋`.
    FlatCounterexample(IrrationalSpec),
    /// `base` with some values replaced.
    Patched { base: Box<SeqFn>, overrides: BTreeMap<BigInt, BigReal> },
}

impl SeqFn {
    /// Parses `periodized:<expr in x>`, `seq:<expr in n>` or `flat`; the last
    /// two forms without a γ of their own use `gamma`.
    pub fn parse(text: &str, gamma: &IrrationalSpec) -> Result<Self> {
        let t = text.trim();
        if let Some(e) = t.strip_prefix("periodized:") {
            return Ok(periodize(Expr::parse(e)?, gamma.clone()));
        }
        if let Some(e) = t.strip_prefix("seq:") {
            return Ok(SeqFn::ExprSeq(Template::parse(e, &["n"])?.instantiate(&[Expr::Var])));
        }
        if t == "flat" {
            return Ok(build_flat_nonconstant(gamma.clone()));
        }
        Err(Error::InvalidInput(format!("unknown sequence `{}`; use periodized:<expr>, seq:<expr> or flat", t)))
    }

    /// Binds the irrationals this sequence refers to.
    pub fn bind(&self, cfg: &Config) -> BoundSeq<'_> {
        let gamma = match self {
            SeqFn::Periodized { gamma, .. } | SeqFn::FlatCounterexample(gamma) => Some(gamma.resolve(cfg)),
            _ => None,
        };
        let base = match self {
            SeqFn::Patched { base, .. } => Some(Box::new(base.bind(cfg))),
            _ => None,
        };
        BoundSeq { f: self, gamma, base, cfg: cfg.clone() }
    }

    pub fn describe(&self) -> String {
        match self {
            SeqFn::ExprSeq(e) => format!("seq:{}", e),
            SeqFn::Periodized { outer, gamma } => format!("periodized:{} over {}", outer, gamma),
            SeqFn::FlatCounterexample(g) => format!("flat over {}", g),
            SeqFn::Patched { base, overrides } => format!("{} with {} overrides", base.describe(), overrides.len()),
        }
    }
}

/// A sequence ready for evaluation.
pub struct BoundSeq<'a> {
    f: &'a SeqFn,
    gamma: Option<Gamma>,
    base: Option<Box<BoundSeq<'a>>>,
    cfg: Config,
}

impl BoundSeq<'_> {
    pub fn value(&self, n: &BigInt) -> Result<BigReal> {
        if !n.is_positive() {
            return Err(Error::InvalidInput(format!("sequence index {} is not positive", n)));
        }
        let p = self.cfg.precision;
        match self.f {
            SeqFn::ExprSeq(e) => eval(e, &BigReal::from_bigint(n, p)),
            SeqFn::Periodized { outer, .. } => eval(outer, &self.gamma.as_ref().unwrap().rm(n)?),
            SeqFn::FlatCounterexample(_) => {
                let r = self.gamma.as_ref().unwrap().rm(n)?;
                Ok(BigReal::from_bigint(&(&BigReal::one(p) / &r.abs()).floor(), p))
            }
            SeqFn::Patched { overrides, .. } => match overrides.get(n) {
                Some(v) => Ok(v.clone()),
                None => self.base.as_ref().unwrap().value(n),
            },
        }
    }
}

pub fn periodize(outer: Expr, gamma: IrrationalSpec) -> SeqFn {
    SeqFn::Periodized { outer, gamma }
}

pub fn build_flat_nonconstant(gamma: IrrationalSpec) -> SeqFn {
    SeqFn::FlatCounterexample(gamma)
}

/// `sgn(x - a)` written as `floor(x - a) - floor(a - x)`, valid for
/// `|x - a| < 1`: a jump at `a` whose difference quotients blow up like
/// `1/|h|` from both sides.
pub fn sign_jump_at(a: &BigReal) -> Expr {
    let a = Expr::rational(a.to_rational());
    let up = Expr::apply(crate::expr::Func::Floor, &Expr::Var.sub(&a));
    let down = Expr::apply(crate::expr::Func::Floor, &a.sub(&Expr::Var));
    up.sub(&down)
}
