//! Sign + log-magnitude scalars.
//!
//! The coefficients `γ_μ(k)` grow factorially and the Hermite sums mix terms
//! whose magnitudes span hundreds of orders, so products and ratios are
//! carried as `sign · exp(log_abs)` and only collapsed to `f64` at the end.

/// A real number represented as a sign and the natural log of its magnitude.
///
/// Invariant: `sign == 0` if and only if `log_abs == -∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    sign: i8,
    log_abs: f64,
}

impl LogValue {
    /// Exact zero.
    pub const ZERO: LogValue = LogValue {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
    };

    /// Exact one.
    pub const ONE: LogValue = LogValue {
        sign: 1,
        log_abs: 0.0,
    };

    /// Build from a sign and a log-magnitude, normalizing the zero case.
    pub fn new(sign: i8, log_abs: f64) -> Self {
        debug_assert!(matches!(sign, -1 | 0 | 1));
        if sign == 0 || log_abs == f64::NEG_INFINITY {
            LogValue::ZERO
        } else {
            LogValue { sign, log_abs }
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            LogValue::ZERO
        } else {
            LogValue {
                sign: if v > 0.0 { 1 } else { -1 },
                log_abs: v.abs().ln(),
            }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Collapse to `f64`. Overflows to `±∞` when `log_abs > ~709.8`.
    pub fn value(&self) -> f64 {
        self.sign as f64 * self.log_abs.exp()
    }

    /// Exact product: signs compose, log-magnitudes add.
    pub fn mul(&self, other: &LogValue) -> LogValue {
        if self.is_zero() || other.is_zero() {
            return LogValue::ZERO;
        }
        LogValue {
            sign: self.sign * other.sign,
            log_abs: self.log_abs + other.log_abs,
        }
    }

    /// Exact quotient: signs compose, log-magnitudes subtract.
    /// Division by zero yields a signed infinity in log space.
    pub fn div(&self, other: &LogValue) -> LogValue {
        if self.is_zero() {
            return LogValue::ZERO;
        }
        LogValue {
            sign: self.sign * other.sign,
            log_abs: self.log_abs - other.log_abs,
        }
    }
}
