//! Secant iteration for residual equations `α([f]) = 0` over germs.
//!
//! The update is
//! `f₂ = f₁ − α(f₁)·(f₁ − f₀)/(α(f₁) − α(f₀))`, carried out symbolically, and
//! convergence means the residual is germ-equal to zero.

use alloc::vec::Vec;

use crate::calculus::hyper_derivative;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::expr::{Expr, Template};
use crate::germ::{germ_equal, HyperGerm};

pub const DEFAULT_MAX_ITER: usize = 25;

/// A residual template in `Y` (the derivative of the candidate), `X` (the
/// variable) and `F` (the candidate itself), e.g. `Y - 2*X`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSpec {
    template: Template,
}

impl ResidualSpec {
    pub const SYMBOLS: [&'static str; 3] = ["Y", "X", "F"];

    pub fn parse(text: &str) -> Result<Self> {
        Ok(ResidualSpec { template: Template::parse(text, &Self::SYMBOLS)? })
    }

    fn uses_derivative(&self) -> bool {
        self.template.uses(0)
    }
}

pub fn residual(spec: &ResidualSpec, g: &HyperGerm, cfg: &Config) -> Result<HyperGerm> {
    let y = if spec.uses_derivative() {
        hyper_derivative(g, cfg)?.repr().clone()
    } else {
        Expr::zero()
    };
    Ok(HyperGerm::new(spec.template.instantiate(&[y, Expr::Var, g.repr().clone()])))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    pub index: usize,
    pub candidate: Expr,
    pub residual: Expr,
    pub residual_is_zero: bool,
}

#[derive(Debug, Clone)]
pub struct SecantOutcome {
    pub solution: HyperGerm,
    pub converged: bool,
    /// Number of secant updates performed.
    pub updates: usize,
    pub trace: Vec<TraceEntry>,
}

pub fn secant_solve(
    spec: &ResidualSpec,
    g0: &HyperGerm,
    g1: &HyperGerm,
    max_iter: usize,
    cfg: &Config,
) -> Result<SecantOutcome> {
    if germ_equal(g0, g1, cfg)? {
        return Err(Error::InvalidInput("initial guesses are germ-equal".into()));
    }
    let zero = HyperGerm::zero();
    let mut trace = Vec::new();
    let step = |index: usize, g: &HyperGerm, trace: &mut Vec<TraceEntry>| -> Result<(HyperGerm, bool)> {
        let r = residual(spec, g, cfg)?;
        let done = germ_equal(&r, &zero, cfg)?;
        trace.push(TraceEntry {
            index,
            candidate: g.repr().clone(),
            residual: r.repr().clone(),
            residual_is_zero: done,
        });
        Ok((r, done))
    };

    let (mut r0, done) = step(0, g0, &mut trace)?;
    if done {
        return Ok(SecantOutcome { solution: g0.clone(), converged: true, updates: 0, trace });
    }
    let (mut r1, done) = step(1, g1, &mut trace)?;
    if done {
        return Ok(SecantOutcome { solution: g1.clone(), converged: true, updates: 0, trace });
    }
    let (mut f0, mut f1) = (g0.clone(), g1.clone());
    for k in 1..=max_iter {
        let dr = r1.repr().sub(r0.repr());
        if germ_equal(&HyperGerm::new(dr.clone()), &zero, cfg)? {
            return Err(Error::DivisionByZeroGerm);
        }
        let df = f1.repr().sub(f0.repr());
        let f2 = HyperGerm::new(f1.repr().sub(&r1.repr().mul(&df.div(&dr))));
        let (r2, done) = step(k + 1, &f2, &mut trace)?;
        if done {
            return Ok(SecantOutcome { solution: f2, converged: true, updates: k, trace });
        }
        f0 = core::mem::replace(&mut f1, f2);
        r0 = core::mem::replace(&mut r1, r2);
    }
    Ok(SecantOutcome { solution: f1, converged: false, updates: max_iter, trace })
}
