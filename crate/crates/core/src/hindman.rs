//! Finite sets whose nonempty subset sums all share one color.
//!
//! For a coloring of `1..=N` with finitely many colors, the search returns
//! the lexicographically smallest `S = {n₁ < … < n_k}` such that every
//! nonempty `X ⊆ S` has `ΣX ≤ N` and `color(ΣX) = c`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::expr::{eval, eval_exact, Expr, Template};
use crate::real::{terminating_decimal, BigReal};

/// An exact color value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ColorKey {
    Int(BigInt),
    Rational(BigRational),
    /// A value known only numerically, rounded to a fixed number of digits.
    Decimal(String),
}

impl fmt::Display for ColorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorKey::Int(v) => write!(f, "{}", v),
            ColorKey::Rational(r) => match terminating_decimal(r) {
                Some(s) => f.write_str(&s),
                None => write!(f, "{}/{}", r.numer(), r.denom()),
            },
            ColorKey::Decimal(s) => f.write_str(s),
        }
    }
}

impl From<i64> for ColorKey {
    fn from(v: i64) -> Self {
        ColorKey::Int(v.into())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coloring {
    /// `n mod m`.
    Modular(u64),
    /// Colors of `1..=len`.
    Table(Vec<ColorKey>),
    /// An expression in `n`.
    ExprColor(Expr),
}

impl Coloring {
    /// Parses `mod:<m>` or `expr:<expression in n>`. Tables come from files
    /// and are built with [`Coloring::table_from_text`].
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some(m) = t.strip_prefix("mod:") {
            let m: u64 = m.trim().parse().map_err(|_| Error::InvalidInput(format!("bad modulus `{}`", m)))?;
            if m == 0 {
                return Err(Error::InvalidInput("modulus must be positive".into()));
            }
            return Ok(Coloring::Modular(m));
        }
        if let Some(e) = t.strip_prefix("expr:") {
            return Ok(Coloring::ExprColor(Template::parse(e, &["n"])?.instantiate(&[Expr::Var])));
        }
        Err(Error::InvalidInput(format!("unknown coloring `{}`; use mod:<m>, table:<path> or expr:<expr>", t)))
    }

    /// Newline-separated integers; blank lines are skipped.
    pub fn table_from_text(text: &str) -> Result<Self> {
        let mut colors = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let v: BigInt = line
                .parse()
                .map_err(|_| Error::InvalidInput(format!("line {}: `{}` is not an integer", i + 1, line)))?;
            colors.push(ColorKey::Int(v));
        }
        if colors.is_empty() {
            return Err(Error::InvalidInput("color table is empty".into()));
        }
        Ok(Coloring::Table(colors))
    }

    pub fn color(&self, n: u64, cfg: &Config) -> Result<ColorKey> {
        match self {
            Coloring::Modular(m) => Ok(ColorKey::Int((n % m).into())),
            Coloring::Table(t) => match (n as usize).checked_sub(1).and_then(|i| t.get(i)) {
                Some(c) => Ok(c.clone()),
                None => Err(Error::WindowTooSmall(format!("color table covers 1..={}, asked for {}", t.len(), n))),
            },
            Coloring::ExprColor(e) => expr_color(e, n, cfg),
        }
    }

    /// Colors of `1..=window`.
    pub fn table(&self, window: u64, cfg: &Config) -> Result<ColorTable> {
        if let Coloring::Table(t) = self {
            if (t.len() as u64) < window {
                return Err(Error::WindowTooSmall(format!("color table covers 1..={}, window is {}", t.len(), window)));
            }
        }
        let colors = (1..=window).map(|n| self.color(n, cfg)).collect::<Result<Vec<_>>>()?;
        Ok(ColorTable { colors })
    }
}

fn expr_color(e: &Expr, n: u64, cfg: &Config) -> Result<ColorKey> {
    let x = BigRational::from_integer(n.into());
    match eval_exact(e, &x) {
        Some(r) => {
            let r = r?;
            Ok(if r.is_integer() { ColorKey::Int(r.to_integer()) } else { ColorKey::Rational(r) })
        }
        None => {
            let v = eval(e, &BigReal::from_bigint(&n.into(), cfg.precision))?;
            let f = v.floor();
            if BigReal::from_bigint(&f, cfg.precision) == v {
                return Ok(ColorKey::Int(f));
            }
            let digits = cfg.precision.get().saturating_sub(10).max(20) as usize;
            Ok(ColorKey::Decimal(v.to_decimal_string(digits)))
        }
    }
}

/// A coloring evaluated over a window `1..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorTable {
    colors: Vec<ColorKey>,
}

impl ColorTable {
    pub fn window(&self) -> u64 {
        self.colors.len() as u64
    }

    pub fn get(&self, n: u64) -> &ColorKey {
        &self.colors[(n - 1) as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSum {
    pub subset: Vec<u64>,
    pub sum: u64,
    pub color: ColorKey,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HindmanCertificate {
    pub color: ColorKey,
    pub set: Vec<u64>,
    /// One entry per nonempty subset, ordered by the bitmask over `set`.
    pub sums: Vec<SubsetSum>,
}

impl HindmanCertificate {
    fn build(set: Vec<u64>, colors: &ColorTable) -> Self {
        let sums = subsets(&set).map(|(subset, sum)| SubsetSum { color: colors.get(sum).clone(), subset, sum }).collect();
        HindmanCertificate { color: colors.get(set[0]).clone(), set, sums }
    }
}

fn subsets(set: &[u64]) -> impl Iterator<Item = (Vec<u64>, u64)> + '_ {
    (1u64..1 << set.len()).map(move |mask| {
        let subset: Vec<u64> = set.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        let sum = subset.iter().sum();
        (subset, sum)
    })
}

/// Rejects `k = 0`, oversized `k`, and windows too small for `{1, ..., k}`.
pub fn check_shape(k: usize, window: u64) -> Result<()> {
    if k == 0 || k > 24 {
        return Err(Error::InvalidInput(format!("k must be between 1 and 24, got {}", k)));
    }
    let need = (k as u64) * (k as u64 + 1) / 2;
    if need > window {
        return Err(Error::WindowTooSmall(format!(
            "the sums of {{1..{}}} reach {}, beyond the window {}",
            k, need, window
        )));
    }
    Ok(())
}

/// The lexicographically smallest certificate of size `k` within `1..=window`.
pub fn search_monochromatic(coloring: &Coloring, k: usize, window: u64, cfg: &Config) -> Result<Option<HindmanCertificate>> {
    check_shape(k, window)?;
    let colors = coloring.table(window, cfg)?;
    Ok((1..=window).find_map(|first| search_from(&colors, k, first)))
}

/// The smallest certificate of size `k` whose least element is `first`.
/// Certificates for different `first` can be searched independently; the
/// answer overall is the one with the smallest `first`.
pub fn search_from(colors: &ColorTable, k: usize, first: u64) -> Option<HindmanCertificate> {
    let window = colors.window();
    if k == 0 || !fits(first, 0, k - 1, window) {
        return None;
    }
    let mut set = Vec::with_capacity(k);
    set.push(first);
    let mut sums = Vec::with_capacity(1 << k);
    sums.push(first);
    let color = colors.get(first);
    if dfs(colors, color, k, &mut set, &mut sums) {
        Some(HindmanCertificate::build(set, colors))
    } else {
        None
    }
}

/// Whether `n` followed by `rest` more elements `n+1, n+2, ...` keeps the
/// total `ΣS` within the window.
fn fits(n: u64, total: u64, rest: usize, window: u64) -> bool {
    let r = rest as u64;
    total + n + r * n + r * (r + 1) / 2 <= window
}

fn dfs(colors: &ColorTable, color: &ColorKey, k: usize, set: &mut Vec<u64>, sums: &mut Vec<u64>) -> bool {
    if set.len() == k {
        return true;
    }
    let window = colors.window();
    let total: u64 = set.iter().sum();
    let rest = k - set.len() - 1;
    let mut n = set.last().unwrap() + 1;
    while fits(n, total, rest, window) {
        if colors.get(n) == color && sums.iter().all(|s| colors.get(s + n) == color) {
            let before = sums.len();
            for i in 0..before {
                sums.push(sums[i] + n);
            }
            sums.push(n);
            set.push(n);
            if dfs(colors, color, k, set, sums) {
                return true;
            }
            set.pop();
            sums.truncate(before);
        }
        n += 1;
    }
    false
}

/// True when `cert.set` is strictly increasing and every nonempty subset sum
/// has color `cert.color`. A nonempty `cert.sums` must also match the
/// recomputed sums.
pub fn verify_certificate(coloring: &Coloring, cert: &HindmanCertificate, cfg: &Config) -> Result<bool> {
    let set = &cert.set;
    if set.is_empty() || set.len() > 24 || set[0] == 0 || set.windows(2).any(|w| w[0] >= w[1]) {
        return Ok(false);
    }
    let mut recomputed = Vec::new();
    for (subset, sum) in subsets(set) {
        let color = coloring.color(sum, cfg)?;
        if color != cert.color {
            return Ok(false);
        }
        recomputed.push(SubsetSum { subset, sum, color });
    }
    Ok(cert.sums.is_empty() || cert.sums == recomputed)
}

/// Brute force over all `k`-subsets of `1..=window`, in lexicographic order.
/// Exponential; meant as a reference for small windows.
pub fn brute_force(coloring: &Coloring, k: usize, window: u64, cfg: &Config) -> Result<Option<Vec<u64>>> {
    check_shape(k, window)?;
    let colors = coloring.table(window, cfg)?;
    let mut idx: Vec<u64> = (1..=k as u64).collect();
    loop {
        let ok = subsets(&idx).all(|(_, s)| s <= window && colors.get(s) == colors.get(idx[0]));
        if ok {
            return Ok(Some(idx));
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if idx[i] < window - (k - 1 - i) as u64 {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl ColorKey {
    /// The integer value, when the key is a machine-size integer.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            ColorKey::Int(v) => v.to_i64(),
            _ => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            ColorKey::Int(v) => v.is_negative(),
            ColorKey::Rational(r) => r.is_negative(),
            ColorKey::Decimal(s) => s.starts_with('-'),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ColorKey::Int(v) => v.is_zero(),
            ColorKey::Rational(r) => r.is_zero(),
            ColorKey::Decimal(_) => false,
        }
    }
}
