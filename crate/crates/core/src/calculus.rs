//! Derivative, composition and the chain rule on germs.

use alloc::format;
use alloc::string::String;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::expr::{Expr, Func};
use crate::germ::{germ_equal, germ_mul, HyperGerm};
use crate::real::BigReal;

/// A germ whose representative is built only from constants, `x`, `+`, `-`,
/// `*`, non-negative integer powers, `exp`, `sin` and `cos`. Such a
/// representative is an entire function.
#[derive(Debug, Clone)]
pub struct EntireGerm(HyperGerm);

impl EntireGerm {
    pub fn new(g: HyperGerm) -> Result<Self> {
        match whitelist_violation(g.repr()) {
            None => Ok(EntireGerm(g)),
            Some(why) => Err(Error::NotEntire(format!("{}: {}", g.repr(), why))),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        EntireGerm::new(HyperGerm::parse(text)?)
    }

    pub fn germ(&self) -> &HyperGerm {
        &self.0
    }

    pub fn repr(&self) -> &Expr {
        self.0.repr()
    }

    pub fn into_germ(self) -> HyperGerm {
        self.0
    }
}

pub fn is_entire(e: &Expr) -> bool {
    whitelist_violation(e).is_none()
}

fn whitelist_violation(e: &Expr) -> Option<String> {
    match e {
        Expr::Const(_) | Expr::Var => None,
        Expr::Add(xs) | Expr::Mul(xs) => xs.iter().find_map(whitelist_violation),
        Expr::Neg(a) => whitelist_violation(a),
        Expr::Pow(_, k) if *k < 0 => Some(format!("negative power {}", k)),
        Expr::Pow(b, _) => whitelist_violation(b),
        Expr::Div(..) => Some("division".into()),
        Expr::Apply(Func::Exp | Func::Sin | Func::Cos, a) => whitelist_violation(a),
        Expr::Apply(f, _) => Some(format!("function {}", f.name())),
    }
}

/// True when the derivative of the representative is Laurent-expandable.
pub fn in_domain_d(g: &HyperGerm, cfg: &Config) -> bool {
    hyper_derivative(g, cfg).is_ok()
}

/// `[f]' = [f']`.
pub fn hyper_derivative(g: &HyperGerm, cfg: &Config) -> Result<HyperGerm> {
    let d = HyperGerm::new(g.repr().differentiate()?);
    d.series(cfg)?;
    Ok(d)
}

fn entire_derivative(f: &EntireGerm) -> EntireGerm {
    let d = f.repr().differentiate().expect("whitelist expressions are smooth");
    EntireGerm::new(HyperGerm::new(d)).expect("whitelist is closed under differentiation")
}

/// `[f] ∘ [g] = [f ∘ g]` by substituting `g` for `x` in `f`.
pub fn hyper_compose(f: &HyperGerm, g: &HyperGerm) -> Result<EntireGerm> {
    let f = EntireGerm::new(f.clone())?;
    let g = EntireGerm::new(g.clone())?;
    Ok(compose(&f, &g))
}

pub fn compose(f: &EntireGerm, g: &EntireGerm) -> EntireGerm {
    EntireGerm(HyperGerm::new(f.repr().substitute(g.repr())))
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    pub holds: bool,
    /// `(f ∘ g)'`
    pub lhs: HyperGerm,
    /// `(f' ∘ g) · g'`
    pub rhs: HyperGerm,
}

pub fn check_chain_rule(f: &HyperGerm, g: &HyperGerm, cfg: &Config) -> Result<ChainReport> {
    let f = EntireGerm::new(f.clone())?;
    let g = EntireGerm::new(g.clone())?;
    let lhs = hyper_derivative(compose(&f, &g).germ(), cfg)?;
    let rhs = germ_mul(compose(&entire_derivative(&f), &g).germ(), entire_derivative(&g).germ());
    let holds = germ_equal(&lhs, &rhs, cfg)?;
    Ok(ChainReport { holds, lhs, rhs })
}

/// The germ of `x0 + y0·x`: standard part `x0`, derivative `y0`.
pub fn lift_point(x0: &BigReal, y0: &BigReal) -> HyperGerm {
    let e = Expr::rational(x0.to_rational()).add(&Expr::rational(y0.to_rational()).mul(&Expr::Var));
    HyperGerm::new(e)
}
