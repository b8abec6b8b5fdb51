//! Expression trees in the single variable `x`.
//!
//! Every public constructor returns a tree in canonical form: sums and
//! products flattened and sorted, like terms and like powers collected,
//! rational constants folded. Canonicalization is purely structural and
//! never applies trigonometric or exponential identities.

mod canon;
mod diff;
mod eval;
mod parse;
mod print;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use eval::{eval, eval_exact};
pub use parse::Template;

use crate::error::Result;

/// Unary functions admitted by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Abs,
    Floor,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Abs => "abs",
            Func::Floor => "floor",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "abs" => Func::Abs,
            "floor" => Func::Floor,
            _ => return None,
        })
    }

    /// Abs and Floor evaluate but cannot be differentiated or expanded.
    pub fn is_smooth(self) -> bool {
        !matches!(self, Func::Abs | Func::Floor)
    }
}

/// A symbolic elementary function of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(BigRational),
    Var,
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Apply(Func, Box<Expr>),
}

impl Expr {
    /// Parses and canonicalizes an expression in `x`.
    pub fn parse(text: &str) -> Result<Expr> {
        Ok(Template::parse(text, &["x"])?.instantiate(&[Expr::Var]))
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn int(v: i64) -> Expr {
        Expr::Const(BigRational::from_integer(v.into()))
    }

    pub fn rational(r: BigRational) -> Expr {
        Expr::Const(r)
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        canon::canonicalize(&Expr::Add(terms))
    }

    pub fn product(factors: Vec<Expr>) -> Expr {
        canon::canonicalize(&Expr::Mul(factors))
    }

    pub fn add(&self, other: &Expr) -> Expr {
        Expr::sum(alloc::vec![self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        Expr::sum(alloc::vec![self.clone(), Expr::Neg(Box::new(other.clone()))])
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        Expr::product(alloc::vec![self.clone(), other.clone()])
    }

    pub fn div(&self, other: &Expr) -> Expr {
        canon::canonicalize(&Expr::Div(Box::new(self.clone()), Box::new(other.clone())))
    }

    pub fn neg(&self) -> Expr {
        canon::canonicalize(&Expr::Neg(Box::new(self.clone())))
    }

    pub fn powi(&self, k: i64) -> Expr {
        canon::canonicalize(&Expr::Pow(Box::new(self.clone()), k))
    }

    pub fn apply(f: Func, arg: &Expr) -> Expr {
        canon::canonicalize(&Expr::Apply(f, Box::new(arg.clone())))
    }

    pub fn canonical(&self) -> Expr {
        canon::canonicalize(self)
    }

    /// Replaces every occurrence of `x` by `value`.
    pub fn substitute(&self, value: &Expr) -> Expr {
        canon::canonicalize(&self.replace_var(value))
    }

    fn replace_var(&self, value: &Expr) -> Expr {
        match self {
            Expr::Var => value.clone(),
            Expr::Const(_) => self.clone(),
            Expr::Add(ts) => Expr::Add(ts.iter().map(|t| t.replace_var(value)).collect()),
            Expr::Mul(fs) => Expr::Mul(fs.iter().map(|f| f.replace_var(value)).collect()),
            Expr::Neg(a) => Expr::Neg(Box::new(a.replace_var(value))),
            Expr::Div(n, d) => Expr::Div(Box::new(n.replace_var(value)), Box::new(d.replace_var(value))),
            Expr::Pow(b, k) => Expr::Pow(Box::new(b.replace_var(value)), *k),
            Expr::Apply(f, a) => Expr::Apply(*f, Box::new(a.replace_var(value))),
        }
    }

    /// Symbolic derivative with respect to `x`.
    pub fn differentiate(&self) -> Result<Expr> {
        diff::differentiate(self)
    }

    pub fn as_const(&self) -> Option<&BigRational> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_one())
    }

    /// True when no Abs or Floor node occurs.
    pub fn is_smooth(&self) -> bool {
        self.first_non_smooth().is_none()
    }

    pub(crate) fn first_non_smooth(&self) -> Option<Func> {
        match self {
            Expr::Const(_) | Expr::Var => None,
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().find_map(Expr::first_non_smooth),
            Expr::Neg(a) | Expr::Pow(a, _) => a.first_non_smooth(),
            Expr::Div(n, d) => n.first_non_smooth().or_else(|| d.first_non_smooth()),
            Expr::Apply(f, a) => {
                if f.is_smooth() {
                    a.first_non_smooth()
                } else {
                    Some(*f)
                }
            }
        }
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var => true,
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().any(Expr::contains_var),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Apply(_, a) => a.contains_var(),
            Expr::Div(n, d) => n.contains_var() || d.contains_var(),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + match self {
            Expr::Const(_) | Expr::Var => 0,
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().map(Expr::size).sum(),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Apply(_, a) => a.size(),
            Expr::Div(n, d) => n.size() + d.size(),
        }
    }
}

fn rank(e: &Expr) -> u8 {
    match e {
        Expr::Const(_) => 0,
        Expr::Apply(Func::Exp, _) => 1,
        Expr::Apply(Func::Log, _) => 2,
        Expr::Var => 3,
        Expr::Apply(Func::Sin, _) => 4,
        Expr::Apply(Func::Cos, _) => 5,
        Expr::Apply(Func::Abs, _) => 6,
        Expr::Apply(Func::Floor, _) => 7,
        Expr::Add(_) => 8,
        Expr::Mul(_) => 9,
        Expr::Div(..) => 10,
        Expr::Neg(_) => 11,
        Expr::Pow(..) => 12,
    }
}

fn power_view(e: &Expr) -> (&Expr, i64) {
    match e {
        Expr::Pow(b, k) => (b, *k),
        _ => (e, 1),
    }
}

fn cmp_slices(a: &[Expr], b: &[Expr]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Total structural order: powers sort with their base, ascending exponent.
impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        let (ba, ea) = power_view(self);
        let (bb, eb) = power_view(other);
        let base = if core::ptr::eq(ba, self) && core::ptr::eq(bb, other) {
            match rank(ba).cmp(&rank(bb)) {
                Ordering::Equal => match (ba, bb) {
                    (Expr::Const(x), Expr::Const(y)) => x.cmp(y),
                    (Expr::Var, Expr::Var) => Ordering::Equal,
                    (Expr::Apply(_, x), Expr::Apply(_, y)) => x.cmp(y),
                    (Expr::Add(x), Expr::Add(y)) | (Expr::Mul(x), Expr::Mul(y)) => cmp_slices(x, y),
                    (Expr::Div(n1, d1), Expr::Div(n2, d2)) => n1.cmp(n2).then_with(|| d1.cmp(d2)),
                    (Expr::Neg(x), Expr::Neg(y)) => x.cmp(y),
                    (Expr::Pow(x, j), Expr::Pow(y, k)) => x.cmp(y).then(j.cmp(k)),
                    _ => Ordering::Equal,
                },
                o => o,
            }
        } else {
            ba.cmp(bb)
        };
        base.then(ea.cmp(&eb))
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
