//! Gap probabilities `E_β(n; (0, s))` at the hard edge and at finite `N`.
//!
//! # Weight conventions
//!
//! Every finite-N routine uses the Laguerre weight `λ^{βa/2} e^{-cλ}` with an
//! explicit rate `c`. The default rate is [`rate_standard`] `= β/2`; the
//! large-deviation routines use [`rate_macroscopic`] `= 2βN`, under which the
//! spectrum fills `(0, 1)`. Rescaling between rates only rescales lengths:
//!
//! | quantity | rate `β/2` | rate `2βN` | hard edge |
//! |---|---|---|---|
//! | interval end | `x` | `s̃ = x / (4N)` | `s = 4N x` |
//!
//! [`rescale_interval`] converts an interval end from one rate to another and
//! [`hard_edge_to_finite`] maps the hard-edge `s` to `x = s / (4N)`.

mod asymptotic;
mod exact;
mod largedev;

use serde::Serialize;

pub use asymptotic::*;
pub use exact::*;
pub use largedev::*;

use crate::error::require_nonneg_integer;
use crate::{Error, Result};

/// Rate of the standard weight `e^{-βλ/2}`.
pub fn rate_standard(beta: f64) -> f64 {
    beta / 2.0
}

/// Rate of the weight `e^{-2βNλ}`, under which the spectrum fills `(0, 1)`.
pub fn rate_macroscopic(beta: f64, n: usize) -> f64 {
    2.0 * beta * n as f64
}

/// The interval end `x` under rate `from` expressed under rate `to`.
pub fn rescale_interval(x: f64, from: f64, to: f64) -> f64 {
    x * from / to
}

pub fn hard_edge_to_finite(s: f64, n: usize) -> f64 {
    s / (4.0 * n as f64)
}

pub fn finite_to_hard_edge(x: f64, n: usize) -> f64 {
    4.0 * n as f64 * x
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    HardEdge,
    FiniteN,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapQuery {
    pub beta: f64,
    pub a: f64,
    /// Number of eigenvalues inside `(0, s)`.
    pub n: usize,
    pub s: f64,
    pub regime: Regime,
    /// Matrix size; ignored at the hard edge.
    pub big_n: usize,
}

impl GapQuery {
    pub fn hard_edge(beta: f64, a: f64, n: usize, s: f64) -> Self {
        GapQuery { beta, a, n, s, regime: Regime::HardEdge, big_n: 0 }
    }

    pub fn finite_n(beta: f64, a: f64, n: usize, s: f64, big_n: usize) -> Self {
        GapQuery { beta, a, n, s, regime: Regime::FiniteN, big_n }
    }

    /// Checks the constraints needed by the exact routes; returns `βa/2`.
    pub fn validate_exact(&self) -> Result<usize> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::Domain(format!("β must be positive, got {}", self.beta)));
        }
        if !(self.a >= 0.0) {
            return Err(Error::Domain(format!("a must be nonnegative, got {}", self.a)));
        }
        if !(self.s >= 0.0) || !self.s.is_finite() {
            return Err(Error::Domain(format!("s must be nonnegative, got {}", self.s)));
        }
        let m = require_nonneg_integer(self.beta * self.a / 2.0, "βa/2")?;
        if self.n > 0 {
            require_nonneg_integer(self.beta, "β (needed when n > 0)")?;
        }
        if self.regime == Regime::FiniteN && self.big_n == 0 {
            return Err(Error::InvalidArgument("N must be positive".into()));
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AsymptoticSource {
    /// Log-power `(1/s)^{a(βa/2+1)/4 - βa/4}` with constant `τ^hard`.
    PU,
    /// Log terms `-(β/4)a(a-1) log √s - (a/4) log √s` with constant `A_{a,β}`.
    MG,
    /// Ratio `E(n)/E(0)` with constant `τ^hard(n)`.
    Ratio,
    /// Hard-edge limit of the large-deviation formula: log-power
    /// `-(βa(a-1)/8 + a/4)` with constant `A_{a,β}`.
    Limit,
    /// Multi-argument `₀F₁` asymptotics.
    MultiArgument,
}

/// `exp(c_s s + c_sqrt √s + c_log log s + c_const)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticForm {
    pub c_s: f64,
    pub c_sqrt: f64,
    pub c_log: f64,
    pub c_const: f64,
    pub source: AsymptoticSource,
}

impl AsymptoticForm {
    pub fn ln_evaluate(&self, s: f64) -> f64 {
        self.c_s * s + self.c_sqrt * s.sqrt() + self.c_log * s.ln() + self.c_const
    }

    pub fn evaluate(&self, s: f64) -> f64 {
        self.ln_evaluate(s).exp()
    }

    /// Coefficients of the product of two forms; keeps `self.source`.
    pub fn times(&self, other: &AsymptoticForm) -> AsymptoticForm {
        AsymptoticForm {
            c_s: self.c_s + other.c_s,
            c_sqrt: self.c_sqrt + other.c_sqrt,
            c_log: self.c_log + other.c_log,
            c_const: self.c_const + other.c_const,
            source: self.source,
        }
    }

    /// The form of `s ↦ F(k s)`.
    pub fn rescaled(&self, k: f64) -> AsymptoticForm {
        AsymptoticForm {
            c_s: self.c_s * k,
            c_sqrt: self.c_sqrt * k.sqrt(),
            c_log: self.c_log,
            c_const: self.c_const + self.c_log * k.ln(),
            source: self.source,
        }
    }
}

/// `v(t) = (βa/2) log(t + s̃₀) + β Σ_j log(t + s̃_j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearStatistic {
    pub s_tilde_0: f64,
    pub s_tilde_list: Vec<f64>,
    pub a: f64,
    pub beta: f64,
}

impl LinearStatistic {
    pub fn new(s_tilde_0: f64, s_tilde_list: Vec<f64>, a: f64, beta: f64) -> Result<Self> {
        if !(s_tilde_0 > 0.0) || s_tilde_list.iter().any(|&s| !(s > 0.0)) {
            return Err(Error::Domain("linear statistic needs all s̃ > 0".into()));
        }
        Ok(LinearStatistic { s_tilde_0, s_tilde_list, a, beta })
    }

    /// `(s̃, weight)` for every logarithmic block.
    pub fn weighted_blocks(&self) -> Vec<(f64, f64)> {
        let mut v = vec![(self.s_tilde_0, self.beta * self.a / 2.0)];
        v.extend(self.s_tilde_list.iter().map(|&s| (s, self.beta)));
        v
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.weighted_blocks().iter().map(|&(s, w)| w * (t + s).ln()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rescaling_round_trip() {
        let x = 0.37;
        let y = rescale_interval(x, rate_standard(2.0), rate_macroscopic(2.0, 10));
        assert!((y - x / 40.0).abs() < 1e-15);
        assert!((finite_to_hard_edge(hard_edge_to_finite(3.0, 7), 7) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn form_rescaling_matches_direct_evaluation() {
        let f = AsymptoticForm { c_s: -0.3, c_sqrt: 1.1, c_log: -0.7, c_const: 0.2, source: AsymptoticSource::MG };
        let g = f.rescaled(2.5);
        for s in [1.0, 7.0, 40.0] {
            assert!((g.ln_evaluate(s) - f.ln_evaluate(2.5 * s)).abs() < 1e-12);
        }
    }

    #[test]
    fn query_validation() {
        assert!(GapQuery::hard_edge(2.0, 1.0, 0, 1.0).validate_exact().is_ok());
        assert!(matches!(GapQuery::hard_edge(2.5, 1.0, 0, 1.0).validate_exact(), Err(Error::ParameterQuantization(_))));
        assert!(matches!(GapQuery::hard_edge(2.5, 0.8, 1, 1.0).validate_exact(), Err(Error::ParameterQuantization(_))));
        assert!(GapQuery::finite_n(2.0, 1.0, 0, 1.0, 0).validate_exact().is_err());
    }
}
