use alloc::format;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Expr, Func};
use crate::error::{Error, Result};
use crate::real::BigReal;

/// Numeric value of `e` at `x`, at the precision of `x`.
pub fn eval(e: &Expr, x: &BigReal) -> Result<BigReal> {
    let p = x.precision();
    Ok(match e {
        Expr::Const(c) => BigReal::from_rational(c, p),
        Expr::Var => x.clone(),
        Expr::Add(ts) => {
            let mut acc = BigReal::zero(p);
            for t in ts {
                acc = &acc + &eval(t, x)?;
            }
            acc
        }
        Expr::Mul(fs) => {
            let mut acc = BigReal::one(p);
            for g in fs {
                acc = &acc * &eval(g, x)?;
            }
            acc
        }
        Expr::Neg(a) => -eval(a, x)?,
        Expr::Div(n, d) => {
            let den = eval(d, x)?;
            if den.is_zero() {
                return Err(Error::Domain(format!("division by zero at x = {}", x)));
            }
            &eval(n, x)? / &den
        }
        Expr::Pow(b, k) => {
            let v = eval(b, x)?;
            if v.is_zero() && *k < 0 {
                return Err(Error::Domain(format!("zero raised to {} at x = {}", k, x)));
            }
            v.powi(*k)
        }
        Expr::Apply(f, a) => {
            let v = eval(a, x)?;
            match f {
                Func::Exp => v.exp(),
                Func::Log => v.ln().ok_or_else(|| Error::Domain(format!("log of non-positive value at x = {}", x)))?,
                Func::Sin => v.sin(),
                Func::Cos => v.cos(),
                Func::Abs => v.abs(),
                Func::Floor => BigReal::from_bigint(&v.floor(), p),
            }
        }
    })
}

macro_rules! ok_or_return {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Some(Err(err)),
        }
    };
}

/// Exact value at a rational point when only rational operations occur.
///
/// Returns `None` if a transcendental function is applied to a non-trivial
/// argument.
pub fn eval_exact(e: &Expr, x: &BigRational) -> Option<Result<BigRational>> {
    Some(Ok(match e {
        Expr::Const(c) => c.clone(),
        Expr::Var => x.clone(),
        Expr::Add(ts) => {
            let mut acc = BigRational::zero();
            for t in ts {
                acc += ok_or_return!(eval_exact(t, x)?);
            }
            acc
        }
        Expr::Mul(fs) => {
            let mut acc = BigRational::one();
            for g in fs {
                acc *= ok_or_return!(eval_exact(g, x)?);
            }
            acc
        }
        Expr::Neg(a) => -ok_or_return!(eval_exact(a, x)?),
        Expr::Div(n, d) => {
            let num = ok_or_return!(eval_exact(n, x)?);
            let den = ok_or_return!(eval_exact(d, x)?);
            if den.is_zero() {
                return Some(Err(Error::Domain(format!("division by zero at n = {}", x))));
            }
            num / den
        }
        Expr::Pow(b, k) => {
            let v = ok_or_return!(eval_exact(b, x)?);
            if v.is_zero() && *k < 0 {
                return Some(Err(Error::Domain(format!("zero raised to {} at n = {}", k, x))));
            }
            num_traits::pow::Pow::pow(&v, *k as i32)
        }
        Expr::Apply(f, a) => {
            let v = ok_or_return!(eval_exact(a, x)?);
            match f {
                Func::Abs => v.abs(),
                Func::Floor => BigRational::from_integer(v.floor().to_integer()),
                Func::Exp if v.is_zero() => BigRational::one(),
                Func::Sin if v.is_zero() => BigRational::zero(),
                Func::Cos if v.is_zero() => BigRational::one(),
                Func::Log if v.is_one() => BigRational::zero(),
                _ => return None,
            }
        }
    }))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Precision;

    #[test]
    fn numeric_matches_reference() {
        let p = Precision::default();
        let x = BigReal::parse_decimal("0.3819660112501051517954131656343618822796908201942371378645513773", p).unwrap();
        let e = Expr::parse("exp(x)+3*x^2-2*sin(2*x)").unwrap();
        let v = eval(&e, &x).unwrap();
        let want = BigReal::parse_decimal("0.5193240192273524632713535284473809014535160123506372119790348878", p).unwrap();
        assert!((&v - &want).abs() < BigReal::parse_decimal("1e-55", p).unwrap());
    }

    #[test]
    fn domain_errors() {
        let p = Precision::default();
        let zero = BigReal::zero(p);
        assert!(matches!(eval(&Expr::parse("1/x").unwrap(), &zero), Err(Error::Domain(_))));
        assert!(matches!(eval(&Expr::parse("log(x)").unwrap(), &zero), Err(Error::Domain(_))));
    }

    #[test]
    fn exact_rational_evaluation() {
        let e = Expr::parse("floor(n/3) + n^2/2").map(|_| ()).err();
        assert!(e.is_some(), "n is not the default symbol");
        let t = super::super::Template::parse("floor(n/3) + n^2/2", &["n"]).unwrap().instantiate(&[Expr::Var]);
        let v = eval_exact(&t, &BigRational::from_integer(7.into())).unwrap().unwrap();
        assert_eq!(v, BigRational::new(53.into(), 2.into()));
        assert!(eval_exact(&Expr::parse("sin(x)").unwrap(), &BigRational::one()).is_none());
    }
}
