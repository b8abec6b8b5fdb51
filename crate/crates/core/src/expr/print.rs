use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::canon::split_coeff;
use super::Expr;
use crate::real::terminating_decimal;

fn write_const(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else if let Some(s) = terminating_decimal(c) {
        f.write_str(&s)
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn is_atomic(e: &Expr) -> bool {
    match e {
        Expr::Var | Expr::Apply(..) => true,
        Expr::Const(c) => !c.is_negative() && c.denom().is_one(),
        _ => false,
    }
}

/// Writes `e` as a factor of a product: sums and negatives get parentheses.
fn write_factor(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Add(_) | Expr::Neg(_) | Expr::Div(..) => write!(f, "({})", e),
        Expr::Const(c) if c.is_negative() || !is_plain(c) => write!(f, "({})", e),
        _ => write!(f, "{}", e),
    }
}

/// Integers and terminating decimals print without a slash.
fn is_plain(c: &BigRational) -> bool {
    c.denom().is_one() || terminating_decimal(c).is_some()
}

/// `c * e` as a flat product without canonicalizing, dropping a unit factor.
fn raw_product(c: Expr, e: &Expr) -> Expr {
    let mut fs = alloc::vec![];
    if !c.is_one() || e.is_one() {
        fs.push(c);
    }
    match e {
        Expr::Mul(gs) => fs.extend(gs.iter().cloned()),
        _ if e.is_one() => {}
        _ => fs.push(e.clone()),
    }
    if fs.len() == 1 {
        fs.pop().unwrap()
    } else {
        Expr::Mul(fs)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write_const(f, c),
            Expr::Var => f.write_str("x"),
            Expr::Apply(func, a) => write!(f, "{}({})", func.name(), a),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_factor(f, a)
            }
            Expr::Pow(b, k) => {
                if is_atomic(b) {
                    write!(f, "{}", b)?;
                } else {
                    write!(f, "({})", b)?;
                }
                if *k < 0 {
                    write!(f, "^({})", k)
                } else {
                    write!(f, "^{}", k)
                }
            }
            Expr::Mul(fs) => {
                let mut rest = &fs[..];
                if let Some(Expr::Const(c)) = fs.first() {
                    if fs.len() > 1 {
                        if c == &-BigRational::one() {
                            f.write_str("-")?;
                            rest = &fs[1..];
                        } else if is_plain(c) {
                            write_const(f, c)?;
                            f.write_str("*")?;
                            rest = &fs[1..];
                        }
                    }
                }
                for (i, g) in rest.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write_factor(f, g)?;
                }
                Ok(())
            }
            Expr::Div(n, d) => {
                let (c, rest) = split_coeff(n);
                // a constant denominator is only left unfolded when it is zero
                if !c.denom().is_one() && d.as_const().is_none() {
                    // p/q * rest / d  prints as  p*rest/(q*d)
                    let num = raw_product(Expr::Const(BigRational::from_integer(c.numer().clone())), &rest);
                    let den = raw_product(Expr::Const(BigRational::from_integer(c.denom().clone())), d);
                    return write!(f, "{}", Expr::Div(alloc::boxed::Box::new(num), alloc::boxed::Box::new(den)));
                }
                match &**n {
                    Expr::Add(_) | Expr::Div(..) => write!(f, "({})", n)?,
                    Expr::Const(c) if !c.denom().is_one() => write!(f, "({})", n)?,
                    _ => write!(f, "{}", n)?,
                }
                f.write_str("/")?;
                match &**d {
                    Expr::Mul(_) | Expr::Div(..) | Expr::Add(_) | Expr::Neg(_) => write!(f, "({})", d),
                    Expr::Const(c) if c.is_negative() || !c.denom().is_one() => write!(f, "({})", d),
                    _ => write!(f, "{}", d),
                }
            }
            Expr::Add(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i == 0 {
                        write!(f, "{}", t)?;
                        continue;
                    }
                    let (c, rest) = split_coeff(t);
                    if c.is_negative() {
                        f.write_str("-")?;
                        let flipped = super::canon::with_coeff(&-c, &rest);
                        match flipped {
                            Expr::Add(_) => write!(f, "({})", flipped)?,
                            _ => write!(f, "{}", flipped)?,
                        }
                    } else {
                        write!(f, "+{}", t)?;
                    }
                }
                Ok(())
            }
        }
    }
}
