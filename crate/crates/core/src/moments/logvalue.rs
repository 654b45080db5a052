//! Non-negative reals stored as natural logarithms, plus log-space
//! factorials and binomial coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul};

use statrs::function::gamma::ln_gamma;

/// Relative slack used by [`LogValue::approx_eq`].
pub const LOG_SLACK: f64 = 1e-12;

/// Below this many factors, log-factorials are summed term by term.
const DIRECT_SUM_LIMIT: u64 = 10_000;

/// A non-negative real `x` stored as `ln x`; zero is `ln = -inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    ln: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        ln: f64::NEG_INFINITY,
    };
    pub const ONE: LogValue = LogValue { ln: 0.0 };

    /// Panics on negative or NaN input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x >= 0.0, "LogValue needs a non-negative value, got {x}");
        LogValue { ln: x.ln() }
    }

    pub fn from_ln(ln: f64) -> Self {
        assert!(!ln.is_nan(), "NaN logarithm");
        LogValue { ln }
    }

    pub fn from_u64(x: u64) -> Self {
        LogValue::from_f64(x as f64)
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    /// The plain value; may overflow to `inf` or underflow to `0`.
    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    pub fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    pub fn is_finite(self) -> bool {
        self.ln < f64::INFINITY
    }

    pub fn powf(self, e: f64) -> Self {
        if self.is_zero() {
            return if e == 0.0 { LogValue::ONE } else { LogValue::ZERO };
        }
        LogValue { ln: self.ln * e }
    }

    pub fn powi(self, e: u64) -> Self {
        self.powf(e as f64)
    }

    /// Equality up to [`LOG_SLACK`] relative error.
    pub fn approx_eq(self, other: LogValue) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        (self.ln - other.ln).abs() <= LOG_SLACK * (1.0 + self.ln.abs().max(other.ln.abs()))
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.is_zero() || rhs.is_zero() {
            return LogValue::ZERO;
        }
        LogValue {
            ln: self.ln + rhs.ln,
        }
    }
}

impl Div for LogValue {
    type Output = LogValue;
    /// Panics on division by zero.
    fn div(self, rhs: LogValue) -> LogValue {
        assert!(!rhs.is_zero(), "division by a zero LogValue");
        if self.is_zero() {
            return LogValue::ZERO;
        }
        LogValue {
            ln: self.ln - rhs.ln,
        }
    }
}

impl Add for LogValue {
    type Output = LogValue;
    fn add(self, rhs: LogValue) -> LogValue {
        let (hi, lo) = if self.ln >= rhs.ln {
            (self.ln, rhs.ln)
        } else {
            (rhs.ln, self.ln)
        };
        if lo == f64::NEG_INFINITY || hi == f64::INFINITY {
            return LogValue { ln: hi };
        }
        LogValue {
            ln: hi + (lo - hi).exp().ln_1p(),
        }
    }
}

impl Sum for LogValue {
    fn sum<I: Iterator<Item = LogValue>>(iter: I) -> LogValue {
        iter.fold(LogValue::ZERO, Add::add)
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &LogValue) -> Option<Ordering> {
        self.ln.partial_cmp(&other.ln)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value();
        if v.is_finite() && (v == 0.0 || v.abs() >= 1e-300) {
            write!(f, "{v}")
        } else {
            write!(f, "exp({})", self.ln)
        }
    }
}

/// `ln n!`.
pub fn ln_factorial(n: u64) -> f64 {
    if n <= DIRECT_SUM_LIMIT {
        (2..=n).map(|i| (i as f64).ln()).sum()
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    if k <= DIRECT_SUM_LIMIT {
        (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
    } else {
        ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
    }
}

pub fn binomial(n: u64, k: u64) -> LogValue {
    LogValue::from_ln(ln_binomial(n, k))
}

pub fn factorial(n: u64) -> LogValue {
    LogValue::from_ln(ln_factorial(n))
}

/// Exact `C(n, k)`, `None` on overflow.
pub fn binomial_exact(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}
