//! Signed log-magnitude scalars and a compensated, rescaling accumulator.

use std::ops::Mul;

/// `sign · exp(ln_abs)`; `sign` is one of -1, 0, +1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub sign: f64,
    pub ln_abs: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { sign: 0.0, ln_abs: f64::NEG_INFINITY };
    pub const ONE: LogValue = LogValue { sign: 1.0, ln_abs: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogValue { sign: x.signum(), ln_abs: x.abs().ln() }
        }
    }

    pub fn from_ln(ln_abs: f64) -> Self {
        LogValue { sign: 1.0, ln_abs }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0.0
    }

    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    pub fn abs(self) -> Self {
        LogValue { sign: self.sign.abs(), ln_abs: self.ln_abs }
    }

    pub fn recip(self) -> Self {
        LogValue { sign: self.sign, ln_abs: -self.ln_abs }
    }

    pub fn powi(self, k: i32) -> Self {
        if self.is_zero() {
            return if k == 0 { Self::ONE } else { Self::ZERO };
        }
        let sign = if k % 2 == 0 { 1.0 } else { self.sign };
        LogValue { sign, ln_abs: self.ln_abs * k as f64 }
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.is_zero() || rhs.is_zero() {
            LogValue::ZERO
        } else {
            LogValue { sign: self.sign * rhs.sign, ln_abs: self.ln_abs + rhs.ln_abs }
        }
    }
}

/// Product of the factors, with an exact zero as soon as one factor is zero.
pub fn log_product<I: IntoIterator<Item = f64>>(factors: I) -> LogValue {
    let mut acc = LogValue::ONE;
    for f in factors {
        if f == 0.0 {
            return LogValue::ZERO;
        }
        acc = acc * LogValue::from_f64(f);
    }
    acc
}

const RESCALE_GAP: f64 = 200.0;

/// Neumaier-compensated sum of [`LogValue`] terms held relative to a moving
/// reference exponent, so that sums far beyond the `f64` range stay exact
/// in their leading digits. Also tracks `Σ|term|` for condition estimates.
#[derive(Debug, Clone)]
pub struct LogSum {
    reference: f64,
    sum: f64,
    compensation: f64,
    abs_sum: f64,
    count: usize,
}

impl Default for LogSum {
    fn default() -> Self {
        LogSum { reference: f64::NEG_INFINITY, sum: 0.0, compensation: 0.0, abs_sum: 0.0, count: 0 }
    }
}

impl LogSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: LogValue) {
        if term.is_zero() {
            return;
        }
        self.count += 1;
        if self.reference == f64::NEG_INFINITY {
            self.reference = term.ln_abs;
        } else if term.ln_abs > self.reference + RESCALE_GAP {
            let factor = (self.reference - term.ln_abs).exp();
            self.sum *= factor;
            self.compensation *= factor;
            self.abs_sum *= factor;
            self.reference = term.ln_abs;
        }
        let x = term.sign * (term.ln_abs - self.reference).exp();
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += x.abs();
    }

    pub fn value(&self) -> LogValue {
        if self.count == 0 {
            return LogValue::ZERO;
        }
        let v = self.sum + self.compensation;
        if v == 0.0 {
            LogValue::ZERO
        } else {
            LogValue { sign: v.signum(), ln_abs: v.abs().ln() + self.reference }
        }
    }

    /// `Σ |term|`.
    pub fn abs_value(&self) -> LogValue {
        if self.count == 0 || self.abs_sum == 0.0 {
            LogValue::ZERO
        } else {
            LogValue { sign: 1.0, ln_abs: self.abs_sum.ln() + self.reference }
        }
    }

    /// `Σ|term| / |Σ term|`; infinite when the sum cancels to zero exactly.
    pub fn condition(&self) -> f64 {
        let v = self.value();
        let a = self.abs_value();
        if a.is_zero() {
            1.0
        } else if v.is_zero() {
            f64::INFINITY
        } else {
            (a.ln_abs - v.ln_abs).exp()
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }
}
