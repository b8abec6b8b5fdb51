use crate::real::{BigReal, Precision};

/// Engine-wide numeric settings.
#[derive(Debug, Clone)]
pub struct Config {
    pub precision: Precision,
    /// Truncation order K of Laurent expansions.
    pub order: u32,
    /// Coefficients at or below this magnitude count as zero.
    pub zero_threshold: BigReal,
    /// Bound on |a - b| at the sample points used by germ equality.
    pub sample_tolerance: BigReal,
}

impl Config {
    pub const DEFAULT_ORDER: u32 = 32;
    pub const MIN_ORDER: u32 = 8;

    /// Thresholds scale with the precision: `10^-40` and `10^-20` at 60 digits.
    pub fn new(precision: Precision, order: u32) -> Self {
        let d = precision.get() as i64;
        Config {
            precision,
            order,
            zero_threshold: pow10(-(2 * d / 3), precision),
            sample_tolerance: pow10(-(d / 3), precision),
        }
    }

    pub fn with_order(&self, order: u32) -> Self {
        let mut c = self.clone();
        c.order = order;
        c
    }

    pub fn real(&self, v: i64) -> BigReal {
        BigReal::from_i64(v, self.precision)
    }
}

impl Default for Config {
    fn default() -> Self {
        Config::new(Precision::default(), Self::DEFAULT_ORDER)
    }
}

/// 10^k at precision `p`.
pub fn pow10(k: i64, p: Precision) -> BigReal {
    BigReal::from_i64(10, p).powi(k)
}
