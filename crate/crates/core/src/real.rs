//! Arbitrary-precision real numbers.
//!
//! A [`BigReal`] is `±mag · 2^exp` with `mag` held to a fixed number of bits.
//! Precision is configured in significant decimal digits; arithmetic rounds
//! to nearest (ties to even) at the wider of the two operand precisions.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Working precision in significant decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision(u32);

impl Precision {
    /// Smallest precision the engine accepts.
    pub const MIN_DIGITS: u32 = 30;
    pub const DEFAULT_DIGITS: u32 = 60;

    pub const fn digits(d: u32) -> Self {
        Precision(d)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Mantissa width carrying `digits` decimal digits.
    pub fn bits(self) -> u32 {
        // ceil(d * log2(10)) using an integer ratio slightly above log2(10)
        (self.0 as u64 * 3_321_929).div_ceil(1_000_000) as u32
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_DIGITS)
    }
}

#[derive(Clone)]
pub struct BigReal {
    neg: bool,
    mag: BigUint,
    exp: i64,
    bits: u32,
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({})", self.to_decimal_string(30))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = digits_for_bits(self.bits);
        f.write_str(&self.to_decimal_string(digits))
    }
}

fn digits_for_bits(bits: u32) -> usize {
    ((bits as u64 * 301_029) / 1_000_000).max(1) as usize
}

fn bitlen(m: &BigUint) -> i64 {
    m.bits() as i64
}

fn pow10(k: u32) -> BigUint {
    num_traits::pow(BigUint::from(10u32), k as usize)
}

impl BigReal {
    pub fn zero(p: Precision) -> Self {
        Self::zero_bits(p.bits())
    }

    fn zero_bits(bits: u32) -> Self {
        BigReal { neg: false, mag: BigUint::zero(), exp: 0, bits }
    }

    pub fn one(p: Precision) -> Self {
        Self::from_i64(1, p)
    }

    pub fn from_i64(v: i64, p: Precision) -> Self {
        Self::from_bigint(&BigInt::from(v), p)
    }

    pub fn from_bigint(v: &BigInt, p: Precision) -> Self {
        Self::from_parts(v.sign() == Sign::Minus, v.magnitude().clone(), 0, p.bits())
    }

    /// Nearest representable value to an exact rational.
    pub fn from_rational(r: &BigRational, p: Precision) -> Self {
        Self::from_ratio_bits(r.numer(), r.denom(), p.bits())
    }

    fn from_ratio_bits(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        let neg = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
        div_mags(neg, num.magnitude(), 0, den.magnitude(), 0, bits)
    }

    /// Parses a decimal literal such as `-12.5`, `0.0557281` or `3e-9`.
    pub fn parse_decimal(s: &str, p: Precision) -> Option<Self> {
        parse_decimal_rational(s).map(|r| Self::from_rational(&r, p))
    }

    fn from_parts(neg: bool, mag: BigUint, exp: i64, bits: u32) -> Self {
        let (mag, exp) = round_mag(mag, exp, bits, false);
        if mag.is_zero() {
            return Self::zero_bits(bits);
        }
        BigReal { neg, mag, exp, bits }
    }

    /// Precision of this value, rounded down to whole decimal digits.
    pub fn precision(&self) -> Precision {
        Precision(digits_for_bits(self.bits) as u32)
    }

    pub fn with_precision(&self, p: Precision) -> Self {
        Self::from_parts(self.neg, self.mag.clone(), self.exp, p.bits())
    }

    fn with_bits(&self, bits: u32) -> Self {
        Self::from_parts(self.neg, self.mag.clone(), self.exp, bits)
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg && !self.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.neg && !self.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.neg {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.neg = false;
        r
    }

    /// Binary exponent of the leading bit plus one: `2^(top-1) <= |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exp + bitlen(&self.mag)
    }

    /// Approximate base-10 magnitude; `None` for zero.
    pub fn log10_floor_estimate(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(((self.top() - 1) as f64 * core::f64::consts::LOG10_2) as i64)
    }

    /// Exact rational value of this number.
    pub fn to_rational(&self) -> BigRational {
        let m = BigInt::from_biguint(if self.neg { Sign::Minus } else { Sign::Plus }, self.mag.clone());
        if self.exp >= 0 {
            BigRational::from_integer(m << (self.exp as usize))
        } else {
            BigRational::new(m, BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = bitlen(&self.mag);
        let shift = (len - 60).max(0);
        let m = (&self.mag >> shift as usize).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        let v = m * libm_powi2(e);
        if self.neg {
            -v
        } else {
            v
        }
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            let m = BigInt::from(self.mag.clone() << (self.exp as usize));
            return if self.neg { -m } else { m };
        }
        let sh = (-self.exp) as usize;
        let q = &self.mag >> sh;
        let exact = (&q << sh) == self.mag;
        let q = BigInt::from(q);
        if self.neg {
            if exact {
                -q
            } else {
                -q - 1
            }
        } else {
            q
        }
    }

    /// Nearest integer; halves round away from zero.
    pub fn round(&self) -> BigInt {
        let half = BigReal { neg: false, mag: BigUint::one(), exp: -1, bits: self.bits.max(8) };
        if self.neg {
            -(&self.abs() + &half).floor()
        } else {
            (self + &half).floor()
        }
    }

    pub fn powi(&self, k: i64) -> Self {
        if k < 0 {
            return &BigReal::one_bits(self.bits) / &self.powi(-k);
        }
        let mut result = BigReal::one_bits(self.bits);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn one_bits(bits: u32) -> Self {
        BigReal { neg: false, mag: BigUint::one(), exp: 0, bits }
    }

    /// `x · 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut r = self.clone();
        r.exp += k;
        r
    }

    /// Square root; `None` for negative input.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.neg {
            return None;
        }
        let bits = self.bits;
        let len = bitlen(&self.mag);
        let mut shift = 2 * (bits as i64 + 4) - len;
        if shift < 0 {
            shift = 0;
        }
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mag << shift as usize;
        let s = m.sqrt();
        let exact = &s * &s == m;
        let mut s = s;
        let mut e = (self.exp - shift) / 2;
        if !exact {
            s = (s << 1usize) | BigUint::one();
            e -= 1;
        }
        Some(Self::from_parts(false, s, e, bits))
    }

    pub fn exp(&self) -> Self {
        let bits = self.bits;
        if self.is_zero() {
            return Self::one_bits(bits);
        }
        let top = self.top();
        let s = (top + 10).max(0);
        let w = bits + 24 + s as u32;
        let r = self.with_bits(w).mul_pow2(-s);
        let mut y = exp_taylor(&r, w);
        for _ in 0..s {
            y = &y * &y;
        }
        y.with_bits(bits)
    }

    /// Natural logarithm; `None` for non-positive input.
    pub fn ln(&self) -> Option<Self> {
        if self.is_zero() || self.neg {
            return None;
        }
        let bits = self.bits;
        let w = bits + 24 + (bitlen(&BigUint::from(self.top().unsigned_abs())) as u32);
        let e = self.top();
        // m in [0.5, 1)
        let m = BigReal { neg: false, mag: self.mag.clone(), exp: -bitlen(&self.mag), bits: w };
        let m = m.with_bits(w);
        let ln_m = ln_near_one(&m, w);
        let res = if e == 0 { ln_m } else { &(&ln2(w) * &BigReal::from_parts(e < 0, BigUint::from(e.unsigned_abs()), 0, w)) + &ln_m };
        Some(res.with_bits(bits))
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let bits = self.bits;
        if self.is_zero() {
            return (Self::zero_bits(bits), Self::one_bits(bits));
        }
        let extra = self.top().max(0) as u32;
        let w = bits + 24 + extra;
        let x = self.with_bits(w);
        let half_pi = pi_bits(w).mul_pow2(-1);
        let k = (&x / &half_pi).round();
        let r = &x - &(&half_pi * &BigReal::from_parts(k.sign() == Sign::Minus, k.magnitude().clone(), 0, w));
        let (s, c) = sin_cos_taylor(&r, w);
        let q = k.mod_floor(&BigInt::from(4)).to_u32().unwrap_or(0);
        let (s, c) = match q {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        (s.with_bits(bits), c.with_bits(bits))
    }

    pub fn pi(p: Precision) -> Self {
        pi_bits(p.bits() + 16).with_bits(p.bits())
    }

    pub fn e(p: Precision) -> Self {
        Self::one(p).exp()
    }

    /// Decimal rendering with at most `sig` significant digits, trailing
    /// zeros removed. Scientific notation outside `1e-7 ..= 1e{sig}`.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let (digits, k) = self.decimal_digits(sig);
        let mut digits: Vec<u8> = digits.into_bytes();
        while digits.len() > 1 && *digits.last().unwrap() == b'0' {
            digits.pop();
        }
        let ds = core::str::from_utf8(&digits).unwrap();
        let mut out = String::new();
        if self.neg {
            out.push('-');
        }
        if k >= -7 && k < sig as i64 {
            if k < 0 {
                out.push_str("0.");
                for _ in 0..(-k - 1) {
                    out.push('0');
                }
                out.push_str(ds);
            } else {
                let int_len = (k + 1) as usize;
                if ds.len() <= int_len {
                    out.push_str(ds);
                    for _ in ds.len()..int_len {
                        out.push('0');
                    }
                } else {
                    out.push_str(&ds[..int_len]);
                    out.push('.');
                    out.push_str(&ds[int_len..]);
                }
            }
        } else {
            out.push_str(&ds[..1]);
            if ds.len() > 1 {
                out.push('.');
                out.push_str(&ds[1..]);
            }
            out.push('e');
            out.push_str(&k.to_string());
        }
        out
    }

    /// `sig` leading decimal digits of |x| (rounded) and the decimal exponent
    /// of the first digit.
    fn decimal_digits(&self, sig: usize) -> (String, i64) {
        let mut k = self.log10_floor_estimate().unwrap_or(0);
        loop {
            let s = sig as i64 - 1 - k;
            // n = round(mag * 2^exp * 10^s)
            let mut num = self.mag.clone();
            let mut den = BigUint::one();
            if self.exp >= 0 {
                num <<= self.exp as usize;
            } else {
                den <<= (-self.exp) as usize;
            }
            if s >= 0 {
                num *= pow10(s as u32);
            } else {
                den *= pow10((-s) as u32);
            }
            let (q, r) = num.div_rem(&den);
            let n = if (r << 1usize) >= den { q + 1u32 } else { q };
            let txt = n.to_str_radix(10);
            if txt.len() > sig {
                k += 1;
                continue;
            }
            if txt.len() < sig {
                k -= 1;
                continue;
            }
            return (txt, k);
        }
    }
}

fn libm_powi2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else {
        let mut v = 1.0f64;
        let step = if e > 0 { 2.0 } else { 0.5 };
        for _ in 0..e.unsigned_abs() {
            v *= step;
        }
        v
    }
}

/// Rounds `mag · 2^exp` to at most `bits` significant bits. `sticky`
/// records nonzero bits already discarded below `mag`.
fn round_mag(mag: BigUint, exp: i64, bits: u32, sticky: bool) -> (BigUint, i64) {
    let len = bitlen(&mag);
    if len <= bits as i64 {
        return (mag, exp);
    }
    let shift = (len - bits as i64) as u64;
    let q = &mag >> shift as usize;
    let half = mag.bit(shift - 1);
    let lower = sticky || mag.trailing_zeros().map(|t| t < shift - 1).unwrap_or(false);
    let mut q = q;
    if half && (lower || q.bit(0)) {
        q += 1u32;
    }
    let mut e = exp + shift as i64;
    if bitlen(&q) > bits as i64 {
        q >>= 1usize;
        e += 1;
    }
    (q, e)
}

fn div_mags(neg: bool, a: &BigUint, ea: i64, b: &BigUint, eb: i64, bits: u32) -> BigReal {
    assert!(!b.is_zero(), "BigReal division by zero");
    if a.is_zero() {
        return BigReal::zero_bits(bits);
    }
    let la = bitlen(a);
    let lb = bitlen(b);
    let shift = (bits as i64 + 3 + lb - la).max(0);
    let num = a << shift as usize;
    let (q, r) = num.div_rem(b);
    let exp = ea - eb - shift;
    // q carries at least bits+2 significant bits, so the remainder only acts as a sticky bit
    let (mag, exp) = round_mag(q, exp, bits, !r.is_zero());
    BigReal { neg, mag, exp, bits }
}

fn add_signed(a: &BigReal, b: &BigReal, negate_b: bool) -> BigReal {
    let bits = a.bits.max(b.bits);
    let bneg = b.neg != negate_b;
    if b.is_zero() {
        return a.with_bits(bits);
    }
    if a.is_zero() {
        let mut r = b.with_bits(bits);
        r.neg = bneg;
        return r;
    }
    let gap = a.top() - b.top();
    if gap > bits as i64 + 3 {
        return a.with_bits(bits);
    }
    if -gap > bits as i64 + 3 {
        let mut r = b.with_bits(bits);
        r.neg = bneg;
        return r;
    }
    let e = a.exp.min(b.exp);
    let ma = &a.mag << (a.exp - e) as usize;
    let mb = &b.mag << (b.exp - e) as usize;
    let (neg, mag) = if a.neg == bneg {
        (a.neg, ma + mb)
    } else if ma >= mb {
        (a.neg, ma - mb)
    } else {
        (bneg, mb - ma)
    };
    BigReal::from_parts(neg, mag, e, bits)
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigReal {}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => return a.cmp(&b),
            (Ordering::Equal, _) => return Ordering::Equal,
            _ => {}
        }
        let mag_order = {
            let (ta, tb) = (self.top(), other.top());
            if ta != tb {
                ta.cmp(&tb)
            } else {
                let e = self.exp.min(other.exp);
                let ma = &self.mag << (self.exp - e) as usize;
                let mb = &other.mag << (other.exp - e) as usize;
                ma.cmp(&mb)
            }
        };
        if self.neg {
            mag_order.reverse()
        } else {
            mag_order
        }
    }
}

impl<'a> Add<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn add(self, rhs: &'a BigReal) -> BigReal {
        add_signed(self, rhs, false)
    }
}

impl<'a> Sub<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &'a BigReal) -> BigReal {
        add_signed(self, rhs, true)
    }
}

impl<'a> Mul<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &'a BigReal) -> BigReal {
        let bits = self.bits.max(rhs.bits);
        if self.is_zero() || rhs.is_zero() {
            return BigReal::zero_bits(bits);
        }
        BigReal::from_parts(self.neg != rhs.neg, &self.mag * &rhs.mag, self.exp + rhs.exp, bits)
    }
}

impl<'a> Div<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    /// Panics on division by zero; callers check the divisor.
    fn div(self, rhs: &'a BigReal) -> BigReal {
        let bits = self.bits.max(rhs.bits);
        div_mags(self.neg != rhs.neg, &self.mag, self.exp, &rhs.mag, rhs.exp, bits)
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(mut self) -> BigReal {
        if !self.is_zero() {
            self.neg = !self.neg;
        }
        self
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &'a BigReal) -> BigReal {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

fn small(v: u64, bits: u32) -> BigReal {
    BigReal::from_parts(false, BigUint::from(v), 0, bits)
}

/// Taylor series of exp for |r| well below 1.
fn exp_taylor(r: &BigReal, w: u32) -> BigReal {
    let mut sum = BigReal::one_bits(w);
    let mut term = BigReal::one_bits(w);
    let mut k = 1u64;
    loop {
        term = &(&term * r) / &small(k, w);
        if term.is_zero() || term.top() < sum.top() - w as i64 - 2 {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    sum
}

/// ln(m) for m in [0.5, 2) via 2·atanh((m-1)/(m+1)).
fn ln_near_one(m: &BigReal, w: u32) -> BigReal {
    let one = BigReal::one_bits(w);
    let t = &(m - &one) / &(m + &one);
    atanh_series(&t, w).mul_pow2(1)
}

fn atanh_series(t: &BigReal, w: u32) -> BigReal {
    if t.is_zero() {
        return BigReal::zero_bits(w);
    }
    let t2 = t * t;
    let mut power = t.clone();
    let mut sum = t.clone();
    let mut k = 1u64;
    loop {
        power = &power * &t2;
        let term = &power / &small(2 * k + 1, w);
        if term.is_zero() || term.top() < sum.top() - w as i64 - 2 {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    sum
}

fn ln2(w: u32) -> BigReal {
    let third = &BigReal::one_bits(w) / &small(3, w);
    atanh_series(&third, w).mul_pow2(1)
}

/// atan(1/n) for integer n > 1.
fn atan_inv(n: u64, w: u32) -> BigReal {
    let x = &BigReal::one_bits(w) / &small(n, w);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = x;
    let mut k = 1u64;
    loop {
        power = &power * &x2;
        let term = &power / &small(2 * k + 1, w);
        if term.is_zero() || term.top() < sum.top() - w as i64 - 2 {
            break;
        }
        sum = if k % 2 == 1 { &sum - &term } else { &sum + &term };
        k += 1;
    }
    sum
}

fn pi_bits(w: u32) -> BigReal {
    let w2 = w + 8;
    let a = atan_inv(5, w2).mul_pow2(4);
    let b = atan_inv(239, w2).mul_pow2(2);
    (&a - &b).with_bits(w)
}

/// sin and cos for |r| <= pi/4.
fn sin_cos_taylor(r: &BigReal, w: u32) -> (BigReal, BigReal) {
    let r2 = r * r;
    let mut s_sum = r.clone();
    let mut s_term = r.clone();
    let mut c_sum = BigReal::one_bits(w);
    let mut c_term = BigReal::one_bits(w);
    let mut k = 1u64;
    loop {
        // c_term: (-1)^k r^{2k}/(2k)!, s_term: (-1)^k r^{2k+1}/(2k+1)!
        c_term = -(&(&c_term * &r2) / &small((2 * k - 1) * (2 * k), w));
        s_term = -(&(&s_term * &r2) / &small((2 * k) * (2 * k + 1), w));
        let small_c = c_term.is_zero() || c_term.top() < -(w as i64) - 2;
        let small_s = s_term.is_zero() || s_term.top() < s_sum.top() - w as i64 - 2;
        c_sum = &c_sum + &c_term;
        s_sum = &s_sum + &s_term;
        if small_c && small_s {
            break;
        }
        k += 1;
    }
    (s_sum, c_sum)
}

/// Exact rational value of a decimal literal (`12`, `-0.5`, `1.25e-3`).
pub fn parse_decimal_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp10) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let n = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    let scale = exp10 - frac_part.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return None;
    }
    let mut r = if scale >= 0 {
        BigRational::from_integer(n * BigInt::from(pow10(scale as u32)))
    } else {
        BigRational::new(n, BigInt::from(pow10((-scale) as u32)))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// Exact decimal expansion of a rational if it terminates.
pub fn terminating_decimal(r: &BigRational) -> Option<String> {
    let mut den = r.denom().magnitude().clone();
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    let (mut twos, mut fives) = (0u32, 0u32);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let scale = twos.max(fives);
    let scaled = r.numer().magnitude() * pow10(scale) / r.denom().magnitude();
    let txt = scaled.to_str_radix(10);
    let mut out = String::new();
    if r.is_negative() {
        out.push('-');
    }
    if scale == 0 {
        out.push_str(&txt);
        return Some(out);
    }
    let scale = scale as usize;
    if txt.len() <= scale {
        out.push_str("0.");
        for _ in txt.len()..scale {
            out.push('0');
        }
        out.push_str(&txt);
    } else {
        out.push_str(&txt[..txt.len() - scale]);
        out.push('.');
        out.push_str(&txt[txt.len() - scale..]);
    }
    Some(out)
}
