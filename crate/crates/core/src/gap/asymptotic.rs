//! Large-`s` asymptotic forms at the hard edge.

use serde::Serialize;

use super::{exact_e0_hard, hard_edge_limit_form, AsymptoticForm, AsymptoticSource};
use crate::barnes::{
    dual_parameters, ln_a_const, ln_duality_constants, ln_f_beta_half, ln_tau_hard, ln_tau_hard_n, DualityExponent,
};
use crate::error::as_nonneg_integer;
use crate::Result;

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum E0Variant {
    PU,
    MG,
    Limit,
}

/// Asymptotic form of `E^hard_β(0; (0, s))`.
pub fn asymptotic_e0(a: f64, beta: f64, variant: E0Variant) -> Result<AsymptoticForm> {
    let c_s = -beta / 8.0;
    let c_sqrt = beta * a / 2.0;
    Ok(match variant {
        E0Variant::PU => {
            let c_const =
                if as_nonneg_integer(beta * a / 2.0).is_some() { ln_tau_hard(a, beta)? } else { ln_a_const(a, beta)? };
            AsymptoticForm {
                c_s,
                c_sqrt,
                c_log: -(a * (beta * a / 2.0 + 1.0) / 4.0 - beta * a / 4.0),
                c_const,
                source: AsymptoticSource::PU,
            }
        }
        E0Variant::MG => AsymptoticForm {
            c_s,
            c_sqrt,
            c_log: -(beta * a * (a - 1.0) / 8.0 + a / 8.0),
            c_const: ln_a_const(a, beta)?,
            source: AsymptoticSource::MG,
        },
        E0Variant::Limit => hard_edge_limit_form(a, beta)?,
    })
}

/// Asymptotic form of `E(n)/E(0)`; `n` may be any real `> -1`.
pub fn asymptotic_en_ratio(a: f64, beta: f64, n: f64) -> Result<AsymptoticForm> {
    Ok(AsymptoticForm {
        c_s: 0.0,
        c_sqrt: beta * n,
        c_log: -beta * (n * n + n * a) / 4.0,
        c_const: ln_tau_hard_n(n, a, beta)?,
        source: AsymptoticSource::Ratio,
    })
}

/// Asymptotic form of `E^hard_β(n; (0, s))`.
pub fn asymptotic_en(a: f64, beta: f64, n: f64, variant: E0Variant) -> Result<AsymptoticForm> {
    Ok(asymptotic_e0(a, beta, variant)?.times(&asymptotic_en_ratio(a, beta, n)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    pub beta: f64,
    pub n: f64,
    pub a: f64,
    /// `(β', n', a')` of the right-hand side.
    pub dual: (f64, f64, f64),
    /// Left-hand form in the variable `s` with `E_β` taken at `(2/β)² s`.
    pub lhs: AsymptoticForm,
    pub rhs: AsymptoticForm,
    /// Differences of the `s`, `√s` and `log s` coefficients.
    pub coefficient_diff: [f64; 3],
    pub ln_const_lhs: f64,
    pub ln_const_rhs: f64,
    /// Constants as assembled by the Barnes module, corrected power of `β/2`.
    pub barnes_corrected: (f64, f64),
    /// Same with the transcribed power of `β/2`.
    pub barnes_printed: (f64, f64),
}

impl DualityReport {
    pub fn max_coefficient_diff(&self) -> f64 {
        self.coefficient_diff.iter().fold(0.0f64, |m, d| m.max(d.abs()))
    }

    pub fn const_diff(&self) -> f64 {
        self.ln_const_lhs - self.ln_const_rhs
    }
}

/// Compares the large-`s` forms of `E_β(n; (0, (2/β)² s))` and
/// `E_{4/β}(n'; (0, s))`.
pub fn duality_check(beta: f64, n: f64, a: f64) -> Result<DualityReport> {
    let dual = dual_parameters(beta, n, a);
    let lhs = asymptotic_en(a, beta, n, E0Variant::Limit)?.rescaled(4.0 / (beta * beta));
    let rhs = asymptotic_en(dual.2, dual.0, dual.1, E0Variant::Limit)?;
    Ok(DualityReport {
        beta,
        n,
        a,
        dual,
        lhs,
        rhs,
        coefficient_diff: [lhs.c_s - rhs.c_s, lhs.c_sqrt - rhs.c_sqrt, lhs.c_log - rhs.c_log],
        ln_const_lhs: lhs.c_const,
        ln_const_rhs: rhs.c_const,
        barnes_corrected: ln_duality_constants(beta, n, a, DualityExponent::Corrected)?,
        barnes_printed: ln_duality_constants(beta, n, a, DualityExponent::Printed)?,
    })
}

/// Constant and log-term reading used by [`ln_multi_f01_asympt`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MultiConstant {
    /// Constant `A_{a+2n,β}` and log term `-¼(1-β/2)(a log s₀ + 2Σ log s_j)`.
    Corrected,
    /// Constant with `f_{β/2}(a+2n-1)` and log term
    /// `-½(1-β/2)(a log(s₀/4) + 2Σ log(s_j/4))`.
    Printed,
}

/// Large-argument form of
/// `ln ₀F₁^{(β/2)}(a+2n; (s₀/4)^{βa/2}, (s₁/4)^β, …, (s_n/4)^β)`.
pub fn ln_multi_f01_asympt(s0: f64, s_list: &[f64], a: f64, beta: f64, reading: MultiConstant) -> Result<f64> {
    let n = s_list.len() as f64;
    let ap = a + 2.0 * n;
    let r0 = s0.sqrt();
    let rs: Vec<f64> = s_list.iter().map(|s| s.sqrt()).collect();
    let (constant, logs) = match reading {
        MultiConstant::Corrected => (
            ln_a_const(ap, beta)?,
            -0.25 * (1.0 - beta / 2.0) * (a * s0.ln() + 2.0 * s_list.iter().map(|s| s.ln()).sum::<f64>()),
        ),
        MultiConstant::Printed => (
            -(beta / 4.0) * (ap - 1.0) * ap * (beta / 2.0).ln() - ap / 2.0 * (PI * beta).ln()
                + ln_f_beta_half(ap - 1.0, beta)?,
            -0.5 * (1.0 - beta / 2.0)
                * (a * (s0 / 4.0).ln() + 2.0 * s_list.iter().map(|s| (s / 4.0).ln()).sum::<f64>()),
        ),
    };
    let mut cross = (a / 2.0).powi(2) * r0.ln();
    for &r in &rs {
        cross += r.ln() + a * ((r0 + r) / 2.0).ln();
    }
    let mut pair = 0.0;
    for (k, &rk) in rs.iter().enumerate() {
        for &rj in &rs[..k] {
            pair += ((rj + rk) / 2.0).ln();
        }
    }
    Ok(constant + beta * a / 2.0 * r0 + beta * rs.iter().sum::<f64>() + logs - beta * cross - 2.0 * beta * pair)
}

pub fn multi_f01_asympt(s0: f64, s_list: &[f64], a: f64, beta: f64, reading: MultiConstant) -> Result<f64> {
    Ok(ln_multi_f01_asympt(s0, s_list, a, beta, reading)?.exp())
}

/// `ln` of the factor relating the multi-argument `₀F₁` with arguments
/// `s y_j / 4` to the single-block one with all `y_j = 1`, for `y_j ≈ 1`:
/// `-β √s Σ(1 - y_j) / 2`.
pub fn ln_near_diagonal_factor(s: f64, ys: &[f64], beta: f64) -> f64 {
    -beta * s.sqrt() * ys.iter().map(|y| 1.0 - y).sum::<f64>() / 2.0
}

/// Least-squares fit of `ln[E(0; s) e^{βs/8 - (βa/2)√s}]` against `ln s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// `(ln s, residual)` samples.
    pub points: Vec<(f64, f64)>,
}

impl ExponentFit {
    /// Mean of `residual - slope·ln s` for a prescribed slope.
    pub fn constant_for_slope(&self, slope: f64) -> f64 {
        self.points.iter().map(|&(x, y)| y - slope * x).sum::<f64>() / self.points.len() as f64
    }
}

pub fn fit_log_exponent(a: f64, beta: f64, s_values: &[f64], tol: f64) -> Result<ExponentFit> {
    let points: Vec<(f64, f64)> = s_values
        .iter()
        .map(|&s| {
            exact_e0_hard(s, a, beta, tol).map(|r| (s.ln(), r.ln_abs + beta * s / 8.0 - beta * a / 2.0 * s.sqrt()))
        })
        .collect::<Result<_>>()?;
    let m = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0, y + p.1));
    let (mx, my) = (sx / m, sy / m);
    let (sxy, sxx) =
        points.iter().fold((0.0, 0.0), |(xy, xx), p| (xy + (p.0 - mx) * (p.1 - my), xx + (p.0 - mx).powi(2)));
    let slope = sxy / sxx;
    Ok(ExponentFit { slope, intercept: my - slope * mx, points })
}
