use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Expr, Func};

pub(crate) fn canonicalize(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Var => e.clone(),
        Expr::Apply(f, a) => apply(*f, canonicalize(a)),
        Expr::Neg(a) => product(alloc::vec![Expr::int(-1), canonicalize(a)]),
        Expr::Add(ts) => sum(ts.iter().map(canonicalize).collect()),
        Expr::Mul(fs) => product(fs.iter().map(canonicalize).collect()),
        Expr::Div(n, d) => {
            let mut acc = Factors::default();
            acc.push(canonicalize(n), 1);
            acc.push(canonicalize(d), -1);
            acc.build()
        }
        Expr::Pow(b, k) => {
            let mut acc = Factors::default();
            acc.push(canonicalize(b), *k);
            acc.build()
        }
    }
}

fn apply(f: Func, a: Expr) -> Expr {
    if let Expr::Const(c) = &a {
        let folded = match f {
            Func::Exp if c.is_zero() => Some(BigRational::one()),
            Func::Log if c.is_one() => Some(BigRational::zero()),
            Func::Sin if c.is_zero() => Some(BigRational::zero()),
            Func::Cos if c.is_zero() => Some(BigRational::one()),
            Func::Abs => Some(c.abs()),
            Func::Floor => Some(BigRational::from_integer(c.floor().to_integer())),
            _ => None,
        };
        if let Some(v) = folded {
            return Expr::Const(v);
        }
    }
    Expr::Apply(f, Box::new(a))
}

/// Canonical product of already-canonical factors.
fn product(factors: Vec<Expr>) -> Expr {
    let mut acc = Factors::default();
    for f in factors {
        acc.push(f, 1);
    }
    acc.build()
}

struct Factors {
    coeff: BigRational,
    powers: Vec<(Expr, i64)>,
}

impl Default for Factors {
    fn default() -> Self {
        Factors { coeff: BigRational::one(), powers: Vec::new() }
    }
}

impl Factors {
    fn push(&mut self, f: Expr, k: i64) {
        if k == 0 {
            return;
        }
        match f {
            Expr::Const(c) => {
                if c.is_zero() && k < 0 {
                    self.powers.push((Expr::Const(c), k));
                } else {
                    self.coeff *= pow_rational(&c, k);
                }
            }
            Expr::Mul(fs) => {
                for g in fs {
                    self.push(g, k);
                }
            }
            Expr::Div(n, d) => {
                self.push(*n, k);
                self.push(*d, -k);
            }
            Expr::Pow(b, j) => self.push(*b, j.saturating_mul(k)),
            other => self.powers.push((other, k)),
        }
    }

    fn build(mut self) -> Expr {
        if self.coeff.is_zero() {
            return Expr::zero();
        }
        self.powers.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Expr, i64)> = Vec::with_capacity(self.powers.len());
        for (b, k) in self.powers {
            match merged.last_mut() {
                Some((lb, lk)) if *lb == b => *lk += k,
                _ => merged.push((b, k)),
            }
        }
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (b, k) in merged {
            if k > 0 {
                num.push(power(b, k));
            } else if k < 0 {
                den.push(power(b, -k));
            }
        }
        if !self.coeff.is_one() || num.is_empty() {
            num.insert(0, Expr::Const(self.coeff));
        }
        let numerator = join_product(num);
        if den.is_empty() {
            numerator
        } else {
            Expr::Div(Box::new(numerator), Box::new(join_product(den)))
        }
    }
}

fn power(b: Expr, k: i64) -> Expr {
    if k == 1 {
        b
    } else {
        Expr::Pow(Box::new(b), k)
    }
}

fn join_product(mut fs: Vec<Expr>) -> Expr {
    if fs.len() == 1 {
        fs.pop().unwrap()
    } else {
        Expr::Mul(fs)
    }
}

fn pow_rational(c: &BigRational, k: i64) -> BigRational {
    let n = k.unsigned_abs();
    let numer: BigInt = num_traits::pow(c.numer().clone(), n as usize);
    let denom: BigInt = num_traits::pow(c.denom().clone(), n as usize);
    if k >= 0 {
        BigRational::new(numer, denom)
    } else {
        BigRational::new(denom, numer)
    }
}

/// Splits a canonical term into its rational coefficient and the rest.
pub(crate) fn split_coeff(t: &Expr) -> (BigRational, Expr) {
    match t {
        Expr::Const(c) => (c.clone(), Expr::one()),
        Expr::Mul(fs) => match fs.first() {
            Some(Expr::Const(c)) => {
                let rest: Vec<Expr> = fs[1..].to_vec();
                (c.clone(), join_product(rest))
            }
            _ => (BigRational::one(), t.clone()),
        },
        Expr::Div(n, d) => {
            let (c, rest) = split_coeff(n);
            (c, Expr::Div(Box::new(rest), d.clone()))
        }
        _ => (BigRational::one(), t.clone()),
    }
}

pub(crate) fn with_coeff(c: &BigRational, rest: &Expr) -> Expr {
    if c.is_one() {
        rest.clone()
    } else {
        product(alloc::vec![Expr::Const(c.clone()), rest.clone()])
    }
}

/// Canonical sum of already-canonical terms.
fn sum(terms: Vec<Expr>) -> Expr {
    let mut constant = BigRational::zero();
    let mut parts: Vec<(Expr, BigRational)> = Vec::new();
    let mut stack = terms;
    stack.reverse();
    while let Some(t) = stack.pop() {
        match t {
            Expr::Add(inner) => {
                for u in inner.into_iter().rev() {
                    stack.push(u);
                }
            }
            Expr::Const(c) => constant += c,
            other => {
                let (c, rest) = split_coeff(&other);
                if let Expr::Add(inner) = rest {
                    // c*(a+b) joins the surrounding sum as c*a + c*b
                    for u in inner.into_iter().rev() {
                        stack.push(with_coeff(&c, &u));
                    }
                } else {
                    parts.push((rest, c));
                }
            }
        }
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(Expr, BigRational)> = Vec::with_capacity(parts.len());
    for (rest, c) in parts {
        match merged.last_mut() {
            Some((r, acc)) if *r == rest => *acc += c,
            _ => merged.push((rest, c)),
        }
    }
    let mut out = Vec::new();
    if !constant.is_zero() {
        out.push(Expr::Const(constant));
    }
    for (rest, c) in merged {
        if !c.is_zero() {
            out.push(with_coeff(&c, &rest));
        }
    }
    match out.len() {
        0 => Expr::zero(),
        1 => out.pop().unwrap(),
        _ => Expr::Add(out),
    }
}
