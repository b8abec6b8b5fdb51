//! Seeded random expressions shared by the integration suites.
#![allow(dead_code)]

use hypergerm_core::expr::{Expr, Func};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational<R: Rng>(r: &mut R) -> BigRational {
    let p = r.gen_range(-5i64..=5);
    let q = r.gen_range(1i64..=4);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn nonzero_rational<R: Rng>(r: &mut R) -> BigRational {
    loop {
        let c = small_rational(r);
        if c != BigRational::from_integer(0.into()) {
            return c;
        }
    }
}

fn leaf<R: Rng>(r: &mut R) -> Expr {
    if r.gen_bool(0.6) {
        Expr::Var
    } else {
        Expr::rational(small_rational(r))
    }
}

/// A tree built from constants, `x`, `+`, `-`, `*`, small powers, `exp`,
/// `sin` and `cos`: an entire function.
pub fn entire<R: Rng>(r: &mut R, depth: u32) -> Expr {
    if depth == 0 || r.gen_bool(0.25) {
        return leaf(r);
    }
    match r.gen_range(0..7) {
        0 => entire(r, depth - 1).add(&entire(r, depth - 1)),
        1 => entire(r, depth - 1).sub(&entire(r, depth - 1)),
        2 => entire(r, depth - 1).mul(&entire(r, depth - 1)),
        3 => entire(r, depth - 1).powi(r.gen_range(2..=3)),
        4 => Expr::apply(Func::Exp, &entire(r, depth - 1)),
        5 => Expr::apply(Func::Sin, &entire(r, depth - 1)),
        _ => Expr::apply(Func::Cos, &entire(r, depth - 1)),
    }
}

/// Entire trees plus quotients by functions nonzero at 0, negative powers
/// of `x` and `log` of functions positive near 0: all Laurent-expandable.
pub fn expandable<R: Rng>(r: &mut R, depth: u32) -> Expr {
    if depth == 0 || r.gen_bool(0.25) {
        return leaf(r);
    }
    match r.gen_range(0..10) {
        0 => expandable(r, depth - 1).add(&expandable(r, depth - 1)),
        1 => expandable(r, depth - 1).sub(&expandable(r, depth - 1)),
        2 | 3 => expandable(r, depth - 1).mul(&expandable(r, depth - 1)),
        4 => expandable(r, depth - 1).div(&unit(r, depth - 1)),
        5 => expandable(r, depth - 1).mul(&Expr::Var.powi(-r.gen_range(1..=2))),
        6 => Expr::apply(Func::Log, &unit(r, depth - 1).powi(2)),
        7 => Expr::apply(Func::Exp, &entire(r, depth - 1)),
        8 => Expr::apply(Func::Sin, &entire(r, depth - 1)),
        _ => Expr::apply(Func::Cos, &entire(r, depth - 1)),
    }
}

/// `c + x·e` with `c ≠ 0`: invertible near 0.
pub fn unit<R: Rng>(r: &mut R, depth: u32) -> Expr {
    Expr::rational(nonzero_rational(r)).add(&Expr::Var.mul(&entire(r, depth)))
}

/// Pairs of representatives that agree as germs but not syntactically.
pub fn rewriting_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("sin(x)^2+cos(x)^2", "1"),
        ("exp(2*x)", "exp(x)^2"),
        ("cos(2*x)", "1-2*sin(x)^2"),
        ("sin(2*x)", "2*sin(x)*cos(x)"),
        ("exp(x+1)", "exp(1)*exp(x)"),
        ("log(exp(x))", "x"),
        ("log((1+x)^2)", "2*log(1+x)"),
        ("(x+1)^3", "x^3+3*x^2+3*x+1"),
        ("1/(1-x)-1/(1+x)", "2*x/(1-x^2)"),
        ("sin(x+1)", "sin(x)*cos(1)+cos(x)*sin(1)"),
        ("exp(x)*exp(-x)", "1"),
        ("(exp(x)-1)/x", "(exp(x)-1)*x^-1"),
        ("cos(x)^4-sin(x)^4", "cos(2*x)"),
        ("1/x+1/x^2", "(x+1)/x^2"),
    ]
}

/// Functions continuous at 0, with their value there.
pub fn continuous_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("3+x^3", "3"),
        ("x^2-7*x+2", "2"),
        ("-5", "-5"),
        ("x", "0"),
        ("exp(x)", "1"),
        ("exp(x)+x^3+cos(2*x)", "2"),
        ("sin(x)", "0"),
        ("cos(x)", "1"),
        ("cos(3*x)-sin(x)", "1"),
        ("exp(sin(x))", "1"),
        ("sin(x+1)", "0.8414709848078965066525023216302989996225630607983710656727517099"),
        ("cos(2+x)", "-0.4161468365471423869975682295007621897660007710755448907551499738"),
        ("exp(1+x^2)", "2.7182818284590452353602874713526624977572470936999595749669676277"),
        ("1/(1+x)", "1"),
        ("(2+x)/(3-x)", "0.6666666666666666666666666666666666666666666666666666666666666667"),
        ("(x^2+4)/(x-2)", "-2"),
        ("sin(x)/x", "1"),
        ("(exp(x)-1)/x", "1"),
        ("log(2+x)", "0.6931471805599453094172321214581765680755001343602552541206800095"),
        ("(1-cos(x))/x^2", "0.5"),
    ]
}
