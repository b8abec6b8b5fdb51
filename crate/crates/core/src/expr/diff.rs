use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{canon, Expr, Func};
use crate::error::{Error, Result};

pub(super) fn differentiate(e: &Expr) -> Result<Expr> {
    if let Some(f) = e.first_non_smooth() {
        return Err(Error::NonSmoothExpression(f.name()));
    }
    Ok(canon::canonicalize(&d(e)))
}

fn d(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => Expr::zero(),
        Expr::Var => Expr::one(),
        Expr::Add(ts) => Expr::Add(ts.iter().map(d).collect()),
        Expr::Neg(a) => Expr::Neg(Box::new(d(a))),
        Expr::Mul(fs) => {
            let mut terms = Vec::with_capacity(fs.len());
            for i in 0..fs.len() {
                if !fs[i].contains_var() {
                    continue;
                }
                let mut factors = fs.clone();
                factors[i] = d(&fs[i]);
                terms.push(Expr::Mul(factors));
            }
            Expr::Add(terms)
        }
        Expr::Div(n, q) => {
            // (n' q - n q') / q^2
            let num = Expr::Add(alloc::vec![
                Expr::Mul(alloc::vec![d(n), (**q).clone()]),
                Expr::Neg(Box::new(Expr::Mul(alloc::vec![(**n).clone(), d(q)]))),
            ]);
            Expr::Div(Box::new(num), Box::new(Expr::Pow(q.clone(), 2)))
        }
        Expr::Pow(b, k) => Expr::Mul(alloc::vec![Expr::int(*k), Expr::Pow(b.clone(), k - 1), d(b)]),
        Expr::Apply(f, a) => {
            let outer = match f {
                Func::Exp => e.clone(),
                Func::Log => Expr::Pow(a.clone(), -1),
                Func::Sin => Expr::Apply(Func::Cos, a.clone()),
                Func::Cos => Expr::Neg(Box::new(Expr::Apply(Func::Sin, a.clone()))),
                Func::Abs | Func::Floor => unreachable!("rejected before differentiation"),
            };
            Expr::Mul(alloc::vec![outer, d(a)])
        }
    }
}
