//! Truncated Laurent expansions at 0.
//!
//! Expansion works on series that know their coefficients exactly on a
//! window `lo..hi` of exponents. Each node of an expression is expanded with
//! at most `W` known terms past its own valuation; when cancellation or
//! negative valuations eat into the window, the top level widens `W` and
//! starts over until `K + 1` terms past the valuation are known.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::expr::{Expr, Func};
use crate::real::{BigReal, Precision};

/// A Laurent expansion `c_v x^v + ... + c_{v+K} x^{v+K} + O(x^{v+K+1})`.
///
/// The zero series (every coefficient through order K at or below the zero
/// threshold) has no valuation and no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    valuation: Option<i64>,
    coeffs: Vec<BigReal>,
    order: u32,
}

impl LaurentSeries {
    pub fn zero(order: u32) -> Self {
        LaurentSeries { valuation: None, coeffs: Vec::new(), order }
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// Coefficients `c_v ..= c_{v+K}`.
    pub fn coefficients(&self) -> &[BigReal] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigReal> {
        self.coeffs.first()
    }

    /// Coefficient of `x^k`, or `None` past the truncation.
    pub fn coeff(&self, k: i64, p: Precision) -> Option<BigReal> {
        match self.valuation {
            None => (k <= self.order as i64).then(|| BigReal::zero(p)),
            Some(v) if k < v => Some(BigReal::zero(p)),
            Some(v) => self.coeffs.get((k - v) as usize).cloned(),
        }
    }

    /// Exponent of the first unknown term.
    pub fn truncation(&self) -> i64 {
        self.valuation.unwrap_or(0) + self.order as i64 + 1
    }

    /// Renders with `sig` significant digits per coefficient, skipping zeros.
    pub fn render(&self, sig: usize) -> String {
        let mut out = String::new();
        if let Some(v) = self.valuation {
            for (i, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let k = v + i as i64;
                let mag = c.abs().to_decimal_string(sig);
                let mag = if mag == "1" && k != 0 { String::new() } else { mag + "*" };
                if out.is_empty() {
                    if c.is_negative() {
                        out.push('-');
                    }
                } else {
                    out.push_str(if c.is_negative() { " - " } else { " + " });
                }
                match k {
                    0 => out.push_str(mag.trim_end_matches('*')),
                    1 => out.push_str(&format!("{}x", mag)),
                    _ => out.push_str(&format!("{}x^{}", mag, k)),
                }
            }
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("O(x^{})", self.truncation()));
        out
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.coeffs.first().map(|c| c.precision().get()).unwrap_or(40);
        f.write_str(&self.render(digits.saturating_sub(10).max(10) as usize))
    }
}

/// Expands `e` at 0 to `cfg.order + 1` terms past its valuation.
pub fn expand(e: &Expr, cfg: &Config) -> Result<LaurentSeries> {
    if let Some(f) = e.first_non_smooth() {
        return Err(Error::NonSmoothExpression(f.name()));
    }
    let k = cfg.order.max(1) as i64;
    let cap = 16 * (k + 1);
    let mut w = k + 1;
    loop {
        let mut starved = false;
        let ctx = Ctx::new(w, cfg);
        let step = match ctx.series(e) {
            Ok(s) => {
                if s.is_exact_zero() {
                    return Ok(LaurentSeries::zero(cfg.order));
                }
                if s.is_empty() {
                    if s.hi > k {
                        return Ok(LaurentSeries::zero(cfg.order));
                    }
                    k + 1 - s.hi
                } else {
                    let need = s.lo + k + 1;
                    if s.hi >= need {
                        let coeffs = (s.lo..need).map(|i| ctx.get(&s, i).v).collect();
                        return Ok(LaurentSeries { valuation: Some(s.lo), coeffs, order: cfg.order });
                    }
                    need - s.hi
                }
            }
            Err(Fail::NeedMore) => {
                starved = true;
                k + 1
            }
            Err(Fail::Hard(err)) => return Err(err),
        };
        if w >= cap {
            return Err(if starved {
                Error::DivisionByZeroGerm
            } else {
                Error::PrecisionExhausted(format!("expansion window of {} terms did not reach order {}", w, cfg.order))
            });
        }
        w = (w + step.max(1)).min(cap);
    }
}

const INF: i64 = i64::MAX / 4;

/// Approximate `log10 |x|`; `-inf` for zero.
fn lg(x: &BigReal) -> f64 {
    x.log10_floor_estimate().map_or(f64::NEG_INFINITY, |e| e as f64)
}

/// A coefficient together with `log10` of the largest magnitude that went
/// into computing it. Rounding noise sits near `10^(scale - digits)`, so a
/// value far below its scale is cancellation residue, not signal.
#[derive(Clone, Debug)]
struct Co {
    v: BigReal,
    s: f64,
}

impl Co {
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
}

/// Series known exactly on `lo..hi`; `hi == INF` marks a polynomial whose
/// stored coefficients are all there is. `lo == hi` (finite) means "zero
/// through `x^(hi-1)`"; `lo == hi == INF` is exactly zero.
#[derive(Clone, Debug)]
struct Ser {
    lo: i64,
    hi: i64,
    c: Vec<Co>,
}

impl Ser {
    fn is_exact_zero(&self) -> bool {
        self.lo == INF
    }

    fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    fn exact_zero() -> Ser {
        Ser { lo: INF, hi: INF, c: Vec::new() }
    }
}

enum Fail {
    /// The window was too narrow to decide; widen and retry.
    NeedMore,
    Hard(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Hard(e)
    }
}

type R<T> = core::result::Result<T, Fail>;

struct Ctx<'a> {
    w: i64,
    p: Precision,
    /// Absolute zero threshold.
    thr: &'a BigReal,
    /// `log10` of the threshold, used relative to a coefficient's scale.
    rel: f64,
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= INF || b >= INF {
        INF
    } else {
        a + b
    }
}

/// Scale of the product of two coefficients.
fn prod_scale(x: &Co, y: &Co) -> f64 {
    (lg(&x.v) + y.s).max(lg(&y.v) + x.s)
}

impl<'a> Ctx<'a> {
    fn new(w: i64, cfg: &'a Config) -> Self {
        Ctx { w, p: cfg.precision, thr: &cfg.zero_threshold, rel: lg(&cfg.zero_threshold) }
    }

    fn zero(&self) -> BigReal {
        BigReal::zero(self.p)
    }

    fn exact(&self, v: BigReal) -> Co {
        let s = lg(&v);
        Co { v, s }
    }

    /// A computed value at scale `s`, zeroed when it is only residue.
    fn co(&self, v: BigReal, s: f64) -> Co {
        if !v.is_zero() && lg(&v) + 1.0 <= s + self.rel {
            return Co { v: self.zero(), s };
        }
        Co { v, s }
    }

    fn get(&self, s: &Ser, i: i64) -> Co {
        let zero = Co { v: self.zero(), s: f64::NEG_INFINITY };
        if i < s.lo {
            return zero;
        }
        match s.c.get((i - s.lo) as usize) {
            Some(v) => v.clone(),
            None => {
                debug_assert!(s.hi == INF, "coefficient {} outside known window", i);
                zero
            }
        }
    }

    fn konst(&self, v: BigReal) -> Ser {
        if v.is_zero() {
            return Ser::exact_zero();
        }
        Ser { lo: 0, hi: INF, c: vec![self.exact(v)] }
    }

    /// Drops leading coefficients at or below the zero threshold, trims
    /// polynomial tails and clamps the window.
    fn normalize(&self, mut s: Ser) -> Ser {
        if s.is_exact_zero() {
            return s;
        }
        let skip = s.c.iter().take_while(|c| c.v.abs() <= *self.thr).count();
        if skip > 0 {
            s.c.drain(..skip);
            s.lo += skip as i64;
        }
        if s.hi == INF {
            while s.c.last().is_some_and(Co::is_zero) {
                s.c.pop();
            }
            if s.c.is_empty() {
                return Ser::exact_zero();
            }
            if s.c.len() as i64 > self.w {
                s.c.truncate(self.w as usize);
                s.hi = s.lo + self.w;
            }
        } else {
            if s.c.is_empty() {
                s.lo = s.hi;
            }
            let max = s.lo + self.w;
            if s.hi > max {
                s.hi = max;
                s.c.truncate(self.w as usize);
            }
        }
        s
    }

    /// End of the coefficient range to compute for a series starting at `lo`.
    fn end(&self, lo: i64, hi: i64) -> i64 {
        hi.min(lo + self.w)
    }

    fn series(&self, e: &Expr) -> R<Ser> {
        Ok(match e {
            Expr::Const(c) => self.konst(BigReal::from_rational(c, self.p)),
            Expr::Var => Ser { lo: 1, hi: INF, c: vec![Co { v: BigReal::one(self.p), s: 0.0 }] },
            Expr::Add(ts) => {
                let mut acc = Ser::exact_zero();
                for t in ts {
                    acc = self.add(&acc, &self.series(t)?);
                }
                acc
            }
            Expr::Mul(fs) => {
                let mut acc = self.konst(BigReal::one(self.p));
                for f in fs {
                    acc = self.mul(&acc, &self.series(f)?);
                }
                acc
            }
            Expr::Neg(a) => self.mul(&self.konst(BigReal::from_i64(-1, self.p)), &self.series(a)?),
            Expr::Div(n, d) => {
                let den = self.inv(&self.series(d)?)?;
                self.mul(&self.series(n)?, &den)
            }
            Expr::Pow(b, k) => self.pow(&self.series(b)?, *k)?,
            Expr::Apply(f, a) => {
                let s = self.series(a)?;
                match f {
                    Func::Exp => self.exp(&s)?,
                    Func::Log => self.log(&s)?,
                    Func::Sin => self.sin_cos(&s)?.0,
                    Func::Cos => self.sin_cos(&s)?.1,
                    Func::Abs | Func::Floor => return Err(Error::NonSmoothExpression(f.name()).into()),
                }
            }
        })
    }

    fn add(&self, a: &Ser, b: &Ser) -> Ser {
        if a.is_exact_zero() {
            return b.clone();
        }
        if b.is_exact_zero() {
            return a.clone();
        }
        let lo = a.lo.min(b.lo);
        let hi = a.hi.min(b.hi);
        let end = if hi == INF {
            (a.lo + a.c.len() as i64).max(b.lo + b.c.len() as i64)
        } else {
            self.end(lo, hi)
        };
        let c = (lo..end)
            .map(|i| {
                let (x, y) = (self.get(a, i), self.get(b, i));
                self.co(&x.v + &y.v, x.s.max(y.s))
            })
            .collect();
        self.normalize(Ser { lo, hi, c })
    }

    fn mul(&self, a: &Ser, b: &Ser) -> Ser {
        if a.is_exact_zero() || b.is_exact_zero() {
            return Ser::exact_zero();
        }
        let lo = a.lo + b.lo;
        let hi = sat_add(a.lo, b.hi).min(sat_add(a.hi, b.lo));
        if a.is_empty() || b.is_empty() {
            return Ser { lo: hi, hi, c: Vec::new() };
        }
        let end = if hi == INF {
            lo + (a.c.len() + b.c.len() - 1) as i64
        } else {
            self.end(lo, hi)
        };
        let end = end.min(lo + self.w);
        let mut c = Vec::with_capacity((end - lo).max(0) as usize);
        for n in lo..end {
            let mut acc = self.zero();
            let mut s = f64::NEG_INFINITY;
            // i indexes a, n - i indexes b
            let i_min = a.lo.max(n - (b.lo + b.c.len() as i64 - 1));
            let i_max = (a.lo + a.c.len() as i64 - 1).min(n - b.lo);
            let mut i = i_min;
            while i <= i_max {
                let x = &a.c[(i - a.lo) as usize];
                let y = &b.c[(n - i - b.lo) as usize];
                s = s.max(prod_scale(x, y));
                if !x.is_zero() && !y.is_zero() {
                    acc = &acc + &(&x.v * &y.v);
                }
                i += 1;
            }
            c.push(self.co(acc, s));
        }
        let hi = if hi == INF && end < lo + (a.c.len() + b.c.len() - 1) as i64 { end } else { hi };
        self.normalize(Ser { lo, hi, c })
    }

    fn inv(&self, b: &Ser) -> R<Ser> {
        let b = self.normalize(b.clone());
        if b.is_exact_zero() {
            return Err(Error::DivisionByZeroGerm.into());
        }
        if b.is_empty() {
            return Err(Fail::NeedMore);
        }
        let v = b.lo;
        let count = if b.hi == INF { self.w } else { (b.hi - b.lo).min(self.w) };
        let b0 = &b.c[0];
        let lb0 = lg(&b0.v);
        // relative noise of b0
        let r0 = b0.s - lb0;
        let mut d: Vec<Co> = Vec::with_capacity(count as usize);
        d.push(Co { v: &BigReal::one(self.p) / &b0.v, s: r0 - lb0 });
        for n in 1..count {
            let mut acc = self.zero();
            let mut s = f64::NEG_INFINITY;
            for k in 1..=n {
                let bk = self.get(&b, v + k);
                let dk = &d[(n - k) as usize];
                s = s.max(prod_scale(&bk, dk));
                if !bk.is_zero() {
                    acc = &acc + &(&bk.v * &dk.v);
                }
            }
            let q = -(&acc / &b0.v);
            let qs = (s - lb0).max(lg(&q) + r0);
            d.push(self.co(q, qs));
        }
        Ok(Ser { lo: -v, hi: -v + count, c: d })
    }

    fn pow(&self, s: &Ser, k: i64) -> R<Ser> {
        if k == 0 {
            return Ok(self.konst(BigReal::one(self.p)));
        }
        let base = if k < 0 { self.inv(s)? } else { s.clone() };
        let mut n = k.unsigned_abs();
        let mut result = self.konst(BigReal::one(self.p));
        let mut sq = base;
        loop {
            if n & 1 == 1 {
                result = self.mul(&result, &sq);
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            sq = self.mul(&sq, &sq);
        }
        Ok(result)
    }

    /// Splits a series with no negative powers into its constant term and
    /// the number of known terms from `x^0`.
    fn entire_arg(&self, s: &Ser, what: &str) -> R<Option<(Co, i64)>> {
        let s = self.normalize(s.clone());
        if s.is_exact_zero() {
            return Ok(None);
        }
        if s.is_empty() {
            return if s.hi >= 1 { Ok(None) } else { Err(Fail::NeedMore) };
        }
        if s.lo < 0 {
            return Err(Error::NotLaurent(format!("{} of a series with a pole of order {}", what, -s.lo)).into());
        }
        let count = if s.hi == INF { self.w } else { s.hi.min(self.w) };
        Ok(Some((self.get(&s, 0), count)))
    }

    /// `k·u_k` for the recurrences below.
    fn weighted(&self, s: &Ser, k: i64) -> Co {
        let u = self.get(s, k);
        let kk = BigReal::from_i64(k, self.p);
        Co { v: &u.v * &kk, s: u.s + lg(&kk) }
    }

    fn exp(&self, s: &Ser) -> R<Ser> {
        let Some((c0, count)) = self.entire_arg(s, "exp")? else {
            return Ok(self.small_arg_result(s, BigReal::one(self.p)));
        };
        // E = exp(u) with u = s - c0; n e_n = sum_k k u_k e_{n-k}
        let mut e: Vec<Co> = Vec::with_capacity(count as usize);
        e.push(Co { v: BigReal::one(self.p), s: 0.0 });
        for n in 1..count {
            let mut acc = self.zero();
            let mut sc = f64::NEG_INFINITY;
            for k in 1..=n {
                let ku = self.weighted(s, k);
                let ek = &e[(n - k) as usize];
                sc = sc.max(prod_scale(&ku, ek));
                if !ku.is_zero() {
                    acc = &acc + &(&ku.v * &ek.v);
                }
            }
            let nn = BigReal::from_i64(n, self.p);
            e.push(self.co(&acc / &nn, sc - lg(&nn)));
        }
        let big = c0.v.exp();
        let big = Co { s: lg(&big) + c0.s.max(0.0), v: big };
        let c = e.iter().map(|x| self.co(&x.v * &big.v, prod_scale(x, &big))).collect();
        Ok(self.normalize(Ser { lo: 0, hi: count, c }))
    }

    /// exp/cos of a series known to vanish through `x^(h-1)`: `value + O(x^h)`.
    fn small_arg_result(&self, s: &Ser, value: BigReal) -> Ser {
        if s.is_exact_zero() {
            return self.konst(value);
        }
        let h = s.hi.min(self.w);
        let mut c = vec![Co { v: self.zero(), s: f64::NEG_INFINITY }; h.max(0) as usize];
        if let Some(first) = c.first_mut() {
            *first = self.exact(value);
        }
        self.normalize(Ser { lo: 0, hi: h, c })
    }

    fn sin_cos(&self, s: &Ser) -> R<(Ser, Ser)> {
        let Some((c0, count)) = self.entire_arg(s, "sin/cos")? else {
            let sin = if s.is_exact_zero() { Ser::exact_zero() } else { self.normalize(s.clone()) };
            return Ok((sin, self.small_arg_result(s, BigReal::one(self.p))));
        };
        // S = sin(u), C = cos(u) with u = s - c0; S' = u'C, C' = -u'S.
        let mut sn: Vec<Co> = Vec::with_capacity(count as usize);
        let mut cs: Vec<Co> = Vec::with_capacity(count as usize);
        sn.push(Co { v: self.zero(), s: f64::NEG_INFINITY });
        cs.push(Co { v: BigReal::one(self.p), s: 0.0 });
        for n in 1..count {
            let (mut a, mut b) = (self.zero(), self.zero());
            let (mut sa, mut sb) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
            for k in 1..=n {
                let ku = self.weighted(s, k);
                let (ck, sk) = (&cs[(n - k) as usize], &sn[(n - k) as usize]);
                sa = sa.max(prod_scale(&ku, ck));
                sb = sb.max(prod_scale(&ku, sk));
                if ku.is_zero() {
                    continue;
                }
                a = &a + &(&ku.v * &ck.v);
                b = &b + &(&ku.v * &sk.v);
            }
            let nn = BigReal::from_i64(n, self.p);
            let ln = lg(&nn);
            sn.push(self.co(&a / &nn, sa - ln));
            cs.push(self.co(-(&b / &nn), sb - ln));
        }
        // sin(c0 + u) = sin c0 cos u + cos c0 sin u; cos(c0 + u) = cos c0 cos u - sin c0 sin u
        let (s0, k0) = c0.v.sin_cos();
        let s0 = Co { s: lg(&s0).max(c0.s), v: s0 };
        let k0 = Co { s: lg(&k0).max(c0.s), v: k0 };
        let mut sin = Vec::with_capacity(count as usize);
        let mut cos = Vec::with_capacity(count as usize);
        for (a, b) in sn.iter().zip(&cs) {
            let sa = prod_scale(&s0, b).max(prod_scale(&k0, a));
            sin.push(self.co(&(&s0.v * &b.v) + &(&k0.v * &a.v), sa));
            cos.push(self.co(&(&k0.v * &b.v) - &(&s0.v * &a.v), sa));
        }
        Ok((
            self.normalize(Ser { lo: 0, hi: count, c: sin }),
            self.normalize(Ser { lo: 0, hi: count, c: cos }),
        ))
    }

    fn log(&self, s: &Ser) -> R<Ser> {
        let s = self.normalize(s.clone());
        if s.is_exact_zero() {
            return Err(Error::Domain("log of zero".into()).into());
        }
        if s.is_empty() {
            return Err(Fail::NeedMore);
        }
        if s.lo != 0 {
            return Err(Error::NotLaurent(format!("log of a series with valuation {}", s.lo)).into());
        }
        let s0 = s.c[0].clone();
        if !s0.v.is_positive() {
            return Err(Error::NotLaurent("log of a series with non-positive constant term".into()).into());
        }
        let ls0 = lg(&s0.v);
        let r0 = s0.s - ls0;
        let count = if s.hi == INF { self.w } else { s.hi.min(self.w) };
        // s L' = s'  =>  n s0 l_n = n s_n - sum_{k=1}^{n-1} k l_k s_{n-k}
        let mut l: Vec<Co> = Vec::with_capacity(count as usize);
        l.push(Co { v: s0.v.ln().expect("positive"), s: r0 });
        for n in 1..count {
            let first = self.weighted(&s, n);
            let mut acc = first.v;
            let mut sc = first.s;
            for k in 1..n {
                let sk = self.get(&s, n - k);
                let kk = BigReal::from_i64(k, self.p);
                let lk = &l[k as usize];
                let klk = Co { v: &lk.v * &kk, s: lk.s + lg(&kk) };
                sc = sc.max(prod_scale(&klk, &sk));
                if !sk.is_zero() {
                    acc = &acc - &(&klk.v * &sk.v);
                }
            }
            let den = &s0.v * &BigReal::from_i64(n, self.p);
            let q = &acc / &den;
            let qs = (sc - lg(&den)).max(lg(&q) + r0);
            l.push(self.co(q, qs));
        }
        Ok(self.normalize(Ser { lo: 0, hi: count, c: l }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    fn ex(s: &str) -> LaurentSeries {
        expand(&Expr::parse(s).unwrap(), &cfg()).unwrap()
    }

    fn close(a: &BigReal, num: i64, den: i64) -> bool {
        let p = a.precision();
        let want = &BigReal::from_i64(num, p) / &BigReal::from_i64(den, p);
        (a - &want).abs() < BigReal::parse_decimal("1e-50", p).unwrap()
    }

    #[test]
    fn sinc_expansion() {
        let s = ex("sin(x)/x");
        assert_eq!(s.valuation(), Some(0));
        let c = s.coefficients();
        assert_eq!(c.len(), 33);
        assert!(close(&c[0], 1, 1));
        assert!(c[1].is_zero());
        assert!(close(&c[2], -1, 6));
        assert!(close(&c[4], 1, 120));
        assert!(close(&c[6], -1, 5040));
    }

    #[test]
    fn poles_and_cancellation() {
        let s = ex("1/x");
        assert_eq!(s.valuation(), Some(-1));
        assert!(close(s.leading().unwrap(), 1, 1));
        let s = ex("exp(x)-1-x");
        assert_eq!(s.valuation(), Some(2));
        assert!(close(s.leading().unwrap(), 1, 2));
        let s = ex("1/(exp(x)-1)");
        assert_eq!(s.valuation(), Some(-1));
        let c = s.coefficients();
        assert!(close(&c[0], 1, 1));
        assert!(close(&c[1], -1, 2));
        assert!(close(&c[2], 1, 12));
        assert!(c[3].abs() < BigReal::parse_decimal("1e-50", c[3].precision()).unwrap());
        assert!(close(&c[4], -1, 720));
        assert!(ex("sin(x)^2+cos(x)^2-1").is_zero());
        assert!(ex("x - x").is_zero());
    }

    #[test]
    fn recentred_functions() {
        // log(1+x) = x - x^2/2 + x^3/3 - ...
        let s = ex("log(1+x)");
        assert_eq!(s.valuation(), Some(1));
        assert!(close(&s.coefficients()[2], 1, 3));
        // exp(1+x) = e * exp(x)
        let s = ex("exp(1+x)/exp(1)");
        assert!(close(&s.coefficients()[3], 1, 6));
        // sin(1+x)^2 + cos(1+x)^2 = 1
        let s = ex("sin(1+x)^2+cos(1+x)^2");
        assert_eq!(s.valuation(), Some(0));
        assert!(close(&s.coefficients()[0], 1, 1));
        for c in &s.coefficients()[1..] {
            assert!(c.abs() < BigReal::parse_decimal("1e-50", c.precision()).unwrap());
        }
    }

    #[test]
    fn high_valuation_terms_survive() {
        let s = ex("x^40*exp(x)");
        assert_eq!(s.valuation(), Some(40));
        assert!(close(&s.coefficients()[2], 1, 2));
        let s = ex("(exp(x)-1)^12/x^30");
        assert_eq!(s.valuation(), Some(-18));
    }

    #[test]
    fn rejections() {
        let c = cfg();
        let err = |s: &str| expand(&Expr::parse(s).unwrap(), &c).unwrap_err();
        assert!(matches!(err("log(x)"), Error::NotLaurent(_)));
        assert!(matches!(err("exp(1/x)"), Error::NotLaurent(_)));
        assert!(matches!(err("abs(x)"), Error::NonSmoothExpression("abs")));
        assert_eq!(err("1/(sin(x)^2+cos(x)^2-1)"), Error::DivisionByZeroGerm);
        assert_eq!(err("1/0"), Error::DivisionByZeroGerm);
    }

    #[test]
    fn renders_compactly() {
        let s = expand(&Expr::parse("1/x + 2 - x^2").unwrap(), &cfg().with_order(8)).unwrap();
        assert_eq!(s.render(20), "x^-1 + 2 - x^2 + O(x^8)");
    }
}
