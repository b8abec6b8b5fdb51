use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::config::{pow10, Config};
use crate::error::{Error, Result};
use crate::real::{parse_decimal_rational, BigReal, Precision};

/// Extra decimal digits carried when forming `n - kγ`.
const GUARD_DIGITS: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Named {
    Phi,
    Sqrt2,
    E,
}

/// A positive irrational γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrrationalSpec {
    Named(Named),
    /// A decimal approximation with at least 30 significant digits. Results
    /// are trusted only while `n·10^-digits < 10^-10·|rm(n)|`.
    Decimal { text: String, value: BigRational, digits: u32 },
    /// Continued-fraction coefficients `a0, a1, ...`; the last one repeats
    /// forever, so the value is a quadratic irrational.
    Cf(Vec<BigInt>),
}

impl IrrationalSpec {
    pub const MIN_DECIMAL_DIGITS: u32 = 30;

    /// Parses `phi`, `sqrt2`, `e`, `dec:<digits>` or `cf:a0,a1,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "phi" => return Ok(IrrationalSpec::Named(Named::Phi)),
            "sqrt2" => return Ok(IrrationalSpec::Named(Named::Sqrt2)),
            "e" => return Ok(IrrationalSpec::Named(Named::E)),
            _ => {}
        }
        if let Some(d) = t.strip_prefix("dec:") {
            return Self::decimal(d);
        }
        if let Some(list) = t.strip_prefix("cf:") {
            let coeffs = list
                .split(',')
                .map(|s| s.trim().parse::<BigInt>())
                .collect::<core::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidInput(format!("bad continued fraction `{}`", list)))?;
            return Self::cf(coeffs);
        }
        Err(Error::InvalidInput(format!("unknown irrational `{}`; use phi, sqrt2, e, dec:<digits> or cf:<list>", t)))
    }

    pub fn decimal(text: &str) -> Result<Self> {
        let value = parse_decimal_rational(text)
            .filter(|v| v.is_positive())
            .ok_or_else(|| Error::InvalidInput(format!("`{}` is not a positive decimal", text)))?;
        let digits = significant_digits(text);
        if digits < Self::MIN_DECIMAL_DIGITS {
            return Err(Error::InvalidInput(format!(
                "decimal irrational needs at least {} significant digits, got {}",
                Self::MIN_DECIMAL_DIGITS,
                digits
            )));
        }
        Ok(IrrationalSpec::Decimal { text: text.to_string(), value, digits })
    }

    pub fn cf(coeffs: Vec<BigInt>) -> Result<Self> {
        let Some(last) = coeffs.last() else {
            return Err(Error::InvalidInput("empty continued fraction".into()));
        };
        if coeffs[0].is_negative() || coeffs[1..].iter().any(|a| !a.is_positive()) || !last.is_positive() {
            return Err(Error::InvalidInput("continued fraction needs a0 >= 0 and a_i >= 1".into()));
        }
        Ok(IrrationalSpec::Cf(coeffs))
    }

    /// Fixes γ at working precision for repeated use.
    pub fn resolve(&self, cfg: &Config) -> Gamma {
        let p = cfg.precision;
        let wp = Precision::digits(p.get() + GUARD_DIGITS);
        let value = match self {
            IrrationalSpec::Named(Named::Phi) => {
                (&BigReal::one(wp) + &BigReal::from_i64(5, wp).sqrt().unwrap()).mul_pow2(-1)
            }
            IrrationalSpec::Named(Named::Sqrt2) => BigReal::from_i64(2, wp).sqrt().unwrap(),
            IrrationalSpec::Named(Named::E) => BigReal::e(wp),
            IrrationalSpec::Decimal { value, .. } => BigReal::from_rational(value, wp),
            IrrationalSpec::Cf(a) => cf_value(a, wp),
        };
        Gamma { spec: self.clone(), value, precision: p, working: wp }
    }
}

impl fmt::Display for IrrationalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrationalSpec::Named(Named::Phi) => f.write_str("phi"),
            IrrationalSpec::Named(Named::Sqrt2) => f.write_str("sqrt2"),
            IrrationalSpec::Named(Named::E) => f.write_str("e"),
            IrrationalSpec::Decimal { text, .. } => write!(f, "dec:{}", text),
            IrrationalSpec::Cf(a) => {
                f.write_str("cf:")?;
                for (i, x) in a.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", x)?;
                }
                Ok(())
            }
        }
    }
}

fn significant_digits(text: &str) -> u32 {
    let mantissa = text.split(['e', 'E']).next().unwrap_or("");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len() as u32
}

/// `[a0; a1, ..., a_n, a_n, a_n, ...]`.
fn cf_value(a: &[BigInt], p: Precision) -> BigReal {
    let last = BigReal::from_bigint(a.last().unwrap(), p);
    // t = [a; a, a, ...] solves t = a + 1/t
    let disc = &(&last * &last) + &BigReal::from_i64(4, p);
    let mut x = (&last + &disc.sqrt().unwrap()).mul_pow2(-1);
    for ai in a[..a.len() - 1].iter().rev() {
        x = &BigReal::from_bigint(ai, p) + &(&BigReal::one(p) / &x);
    }
    x
}

/// A resolved irrational: its value at working precision plus the `IrrationalSpec` it came from.
#[derive(Debug, Clone)]
pub struct Gamma {
    spec: IrrationalSpec,
    value: BigReal,
    precision: Precision,
    working: Precision,
}

impl Gamma {
    pub fn spec(&self) -> &IrrationalSpec {
        &self.spec
    }

    /// γ at the caller's precision.
    pub fn value(&self) -> BigReal {
        self.value.with_precision(self.precision)
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// `n - kγ` for the multiple `kγ` nearest to `n`.
    pub fn rm(&self, n: &BigInt) -> Result<BigReal> {
        if let IrrationalSpec::Decimal { value, digits, .. } = &self.spec {
            return self.rm_decimal(n, value, *digits);
        }
        let nr = BigReal::from_bigint(n, self.working);
        let k = (&nr / &self.value).round();
        let r = &nr - &(&BigReal::from_bigint(&k, self.working) * &self.value);
        Ok(r.with_precision(self.precision))
    }

    fn rm_decimal(&self, n: &BigInt, gamma: &BigRational, digits: u32) -> Result<BigReal> {
        let nq = BigRational::from_integer(n.clone());
        let k = (&nq / gamma).round();
        let r = nq - &k * gamma;
        let p = self.precision;
        let rr = BigReal::from_rational(&r, p);
        let lhs = &BigReal::from_bigint(&n.abs(), p) * &pow10(-(digits as i64), p);
        let rhs = &pow10(-10, p) * &rr.abs();
        if r.is_zero() || lhs >= rhs {
            return Err(Error::PrecisionExhausted(format!(
                "rm({}) is not resolved by {} digits of gamma",
                n, digits
            )));
        }
        Ok(rr)
    }

    /// Continued-fraction convergents `(p_k, q_k)`, with `q_k` strictly
    /// increasing and `p_k > 0`.
    pub fn convergents(&self) -> ConvergentStream {
        let source = match &self.spec {
            IrrationalSpec::Named(n) => Coeffs::Named(*n),
            IrrationalSpec::Cf(a) => Coeffs::Periodic(a.clone()),
            IrrationalSpec::Decimal { value, .. } => Coeffs::Finite(rational_cf(value)),
        };
        ConvergentStream {
            source,
            index: 0,
            p: (BigInt::zero(), BigInt::one()),
            q: (BigInt::one(), BigInt::zero()),
            last_q: BigInt::zero(),
        }
    }

    /// The first `count` convergent numerators with `|rm| < eps`.
    pub fn small_rm_witnesses(&self, eps: &BigReal, count: usize) -> Result<Vec<BigInt>> {
        if !eps.is_positive() {
            return Err(Error::InvalidInput("eps must be positive".into()));
        }
        let mut out = Vec::with_capacity(count);
        for (p, _) in self.convergents() {
            if out.len() == count {
                break;
            }
            if self.rm(&p)?.abs() < *eps {
                out.push(p);
            }
        }
        if out.len() < count {
            return Err(Error::PrecisionExhausted(format!(
                "only {} witnesses available for this gamma",
                out.len()
            )));
        }
        Ok(out)
    }
}

fn rational_cf(r: &BigRational) -> Vec<BigInt> {
    let (mut num, mut den) = (r.numer().clone(), r.denom().clone());
    let mut out = Vec::new();
    while !den.is_zero() {
        let (q, rem) = num.div_mod_floor(&den);
        out.push(q);
        num = core::mem::replace(&mut den, rem);
    }
    out
}

enum Coeffs {
    Named(Named),
    Periodic(Vec<BigInt>),
    Finite(Vec<BigInt>),
}

impl Coeffs {
    fn get(&self, i: usize) -> Option<BigInt> {
        match self {
            Coeffs::Named(Named::Phi) => Some(BigInt::one()),
            Coeffs::Named(Named::Sqrt2) => Some(BigInt::from(if i == 0 { 1 } else { 2 })),
            Coeffs::Named(Named::E) => Some(BigInt::from(match i {
                0 => 2,
                _ if i % 3 == 2 => 2 * (i + 1) / 3,
                _ => 1,
            })),
            Coeffs::Periodic(a) => Some(a.get(i).unwrap_or_else(|| a.last().unwrap()).clone()),
            Coeffs::Finite(a) => a.get(i).cloned(),
        }
    }
}

/// Iterator over exact convergents `(p_k, q_k)`.
pub struct ConvergentStream {
    source: Coeffs,
    index: usize,
    /// (p_{k-1}, p_{k-2})
    p: (BigInt, BigInt),
    q: (BigInt, BigInt),
    last_q: BigInt,
}

impl Iterator for ConvergentStream {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let a = self.source.get(self.index)?;
            self.index += 1;
            let p = &a * &self.p.1 + &self.p.0;
            let q = &a * &self.q.1 + &self.q.0;
            self.p = (core::mem::replace(&mut self.p.1, p.clone()), p.clone());
            self.q = (core::mem::replace(&mut self.q.1, q.clone()), q.clone());
            // keep the first of two equal denominators' successors only
            let next_equal = self.index == 1 && self.source.get(1).is_some_and(|a1| a1.is_one());
            if next_equal || q <= self.last_q || !p.is_positive() {
                continue;
            }
            self.last_q = q.clone();
            return Some((p, q));
        }
    }
}
