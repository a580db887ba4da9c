//! Linear statistics, normalization ratios and the large-deviation formula.
//!
//! Averages here are over the ensemble with weight `e^{-2βNλ}` (spectrum in
//! `(0, 1)`), where an interval `(0, x)` of the standard ensemble becomes
//! `(0, s̃)` with `s̃ = x / (4N)`.

use serde::Serialize;

use super::{AsymptoticForm, AsymptoticSource, LinearStatistic};
use crate::barnes::{ln_a_const, ln_f_beta_half};
use crate::special::ln_gamma;
use crate::{Error, Result};

use std::f64::consts::{LN_2, PI};

/// Closed form of `(2/π) ∫_{-1}^{1} log|ix + t| (1 - t²)^{1/2} dt`.
pub fn r2_kernel(x: f64) -> f64 {
    let r = (x * x + 1.0).sqrt();
    x * r - x * x - (2.0 * (r - x)).ln() - 0.5
}

/// The same kernel as transcribed with mixed `x` / `x²` arguments; kept for
/// the consistency report only.
pub fn r2_kernel_printed(x: f64) -> f64 {
    (x * (x + 1.0)).sqrt() - x - (2.0 * ((x * x + 1.0).sqrt() - x.sqrt())).ln() - 0.5
}

/// `∫ log|s̃ + t| ρ(t) dt / (2N)` leading part, written in `s̃`.
fn block_kernel(st: f64) -> f64 {
    r2_kernel(st.sqrt())
}

/// `μ_N(v)` for the statistic `v`.
pub fn linstat_mean(ls: &LinearStatistic, big_n: usize) -> f64 {
    let nf = big_n as f64;
    let corr = 1.0 / (2.0 * ls.beta) - 0.25;
    ls.weighted_blocks()
        .iter()
        .map(|&(st, w)| w * (2.0 * nf * block_kernel(st) + corr * ((1.0 + st) / st).abs().ln()))
        .sum()
}

/// Mean of `Σ log(s̃ + λ_l)` written directly with `asinh`.
pub fn mean_single_block(st: f64, beta: f64, big_n: usize) -> f64 {
    let q = st.sqrt();
    2.0 * big_n as f64 * ((st * (st + 1.0)).sqrt() - st + q.asinh() - LN_2 - 0.5)
        + (1.0 / (2.0 * beta) - 0.25) * (1.0 + 1.0 / st).ln()
}

/// `ν = -(2s̃+1) + 2(s̃² + s̃)^{1/2}`, in `(-1, 0)` for `s̃ > 0`.
pub fn nu(st: f64) -> f64 {
    // -(√(s̃+1) - √s̃)², cancellation-free
    let d = 1.0 / ((st + 1.0).sqrt() + st.sqrt());
    -d * d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VariancePrefactor {
    /// `2β`; agrees with the Fourier-series definition of the variance.
    TwoBeta,
    /// `2/β`.
    TwoOverBeta,
}

/// `σ²(v)` for the statistic `v`, from the pairwise `log(1 - ν_j ν_k)` sum.
pub fn linstat_variance(ls: &LinearStatistic, prefactor: VariancePrefactor) -> Result<f64> {
    let w: Vec<(f64, f64)> =
        std::iter::once((nu(ls.s_tilde_0), ls.a / 2.0)).chain(ls.s_tilde_list.iter().map(|&s| (nu(s), 1.0))).collect();
    if w.iter().any(|&(v, _)| !(v.abs() < 1.0)) {
        return Err(Error::Domain("|ν| ≥ 1 in the variance of a linear statistic".into()));
    }
    let mut acc = 0.0;
    for (j, &(vj, wj)) in w.iter().enumerate() {
        acc -= wj * wj * (-vj * vj).ln_1p();
        for &(vk, wk) in &w[..j] {
            acc -= 2.0 * wj * wk * (-vj * vk).ln_1p();
        }
    }
    let pref = match prefactor {
        VariancePrefactor::TwoBeta => 2.0 * ls.beta,
        VariancePrefactor::TwoOverBeta => 2.0 / ls.beta,
    };
    Ok(pref * acc)
}

/// Variance of `Σ log(s̃ + λ_l)`.
pub fn variance_single_block(st: f64, beta: f64) -> f64 {
    -2.0 / beta * (st * (st + 1.0)).sqrt().ln() - 4.0 / beta * (2.0 * ((st + 1.0).sqrt() - st.sqrt())).ln()
}

/// `ln ⟨∏(s̃ + λ_l)^{βa/2}⟩` for large `N` (Gaussian fluctuation formula).
pub fn ln_char_poly_moment_asympt(st: f64, a: f64, beta: f64, big_n: usize) -> Result<f64> {
    let ls = LinearStatistic::new(st, vec![], a, beta)?;
    Ok(linstat_mean(&ls, big_n) + linstat_variance(&ls, VariancePrefactor::TwoBeta)? / 2.0)
}

pub fn char_poly_moment_asympt(st: f64, a: f64, beta: f64, big_n: usize) -> Result<f64> {
    Ok(ln_char_poly_moment_asympt(st, a, beta, big_n)?.exp())
}

/// The same moment written out term by term in `s̃`.
pub fn ln_char_poly_moment_explicit(st: f64, a: f64, beta: f64, big_n: usize) -> f64 {
    let nf = big_n as f64;
    let (p, q) = ((st + 1.0).sqrt(), st.sqrt());
    nf * beta * a * ((st * (st + 1.0)).sqrt() - st - (2.0 * (p - q)).ln() - 0.5)
        + beta * a / 4.0 * (1.0 / beta - 0.5) * (1.0 + 1.0 / st).abs().ln()
        - beta * a * a / 4.0 * (st * (st + 1.0)).sqrt().ln()
        + beta * a * a / 2.0 * ((p + q) / 2.0).ln()
}

/// `ln [N(ME(e^{-βx/2})) / N(ME(x^{βa/2} e^{-βx/2}))]`, exact gamma product.
pub fn ln_normalization_ratio(big_n: usize, a: f64, beta: f64) -> f64 {
    let h = beta / 2.0;
    let mut acc = big_n as f64 * a * h * h.ln();
    for j in 0..big_n {
        let jh = j as f64 * h;
        acc += ln_gamma(1.0 + jh) - ln_gamma(a * h + 1.0 + jh);
    }
    acc
}

/// Stirling form of [`ln_normalization_ratio`].
pub fn ln_normalization_ratio_stirling(big_n: usize, a: f64, beta: f64) -> Result<f64> {
    let nf = big_n as f64;
    Ok(-a * nf * beta / 2.0 * nf.ln()
        - beta * a * (a - 1.0) / 4.0 * (nf * beta / 2.0).ln()
        - a / 2.0 * (PI * nf * beta).ln()
        + a * nf * beta / 2.0
        + ln_f_beta_half(a, beta)?)
}

/// Large-`N` form of `ln E_β(0; (0, 4N s̃))` for `N` eigenvalues with weight
/// `λ^{βa/2} e^{-βλ/2}`.
pub fn large_deviation_e0(big_n: usize, st: f64, a: f64, beta: f64) -> Result<f64> {
    if !(st > 0.0) {
        return Err(Error::Domain(format!("large deviation needs s̃ > 0, got {st}")));
    }
    let nf = big_n as f64;
    let (p, q) = ((st + 1.0).sqrt(), st.sqrt());
    Ok(-2.0 * beta * nf * nf * st
        - beta * a * (a - 1.0) / 4.0 * (nf * beta / 2.0).ln()
        - a / 2.0 * (PI * nf * beta).ln()
        + ln_f_beta_half(a, beta)?
        + nf * beta * a * ((st * (st + 1.0)).sqrt() - st + (p + q).ln())
        + beta * a / 4.0 * (1.0 / beta - 0.5) * (1.0 + 1.0 / st).abs().ln()
        - beta * a * a / 4.0 * (st * (st + 1.0)).sqrt().ln()
        + beta * a * a / 2.0 * ((p + q) / 2.0).ln())
}

/// The same formula with the powers and square root as transcribed:
/// `(Nβ/2)^{-β²a(a-1)/4}` and `log(√(s̃²+1) + √s̃)`.
pub fn large_deviation_e0_printed(big_n: usize, st: f64, a: f64, beta: f64) -> Result<f64> {
    let nf = big_n as f64;
    let (p, q) = ((st + 1.0).sqrt(), st.sqrt());
    Ok(-2.0 * beta * nf * nf * st
        - beta * beta * a * (a - 1.0) / 4.0 * (nf * beta / 2.0).ln()
        - a / 2.0 * (PI * nf * beta).ln()
        + ln_f_beta_half(a, beta)?
        + nf * beta * a * ((st * (st + 1.0)).sqrt() - st + ((st * st + 1.0).sqrt() + q).ln())
        + beta * a / 4.0 * (1.0 / beta - 0.5) * (1.0 + 1.0 / st).abs().ln()
        - beta * a * a / 4.0 * (st * (st + 1.0)).sqrt().ln()
        + beta * a * a / 2.0 * ((p + q) / 2.0).ln())
}

/// Power of `4N` in the change of variables `λ ↦ 4Nλ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScalePower {
    /// `(4N)^{Nβa/2}`.
    NBetaAHalf,
    /// `(4N)^{Na}`.
    Na,
}

/// The large-`N` value assembled from its three factors: the shift
/// `e^{-βN·4Ns̃/2}`, the scale power, the exact normalization ratio, and the
/// Gaussian average.
pub fn large_deviation_e0_assembled(big_n: usize, st: f64, a: f64, beta: f64, power: ScalePower) -> Result<f64> {
    let nf = big_n as f64;
    let p = match power {
        ScalePower::NBetaAHalf => nf * beta * a / 2.0,
        ScalePower::Na => nf * a,
    };
    Ok(-2.0 * beta * nf * nf * st
        + p * (4.0 * nf).ln()
        + ln_normalization_ratio(big_n, a, beta)
        + ln_char_poly_moment_asympt(st, a, beta, big_n)?)
}

/// The hard-edge form obtained from [`large_deviation_e0`] under
/// `s̃ = s / (4N)²`, `N → ∞`.
pub fn hard_edge_limit_form(a: f64, beta: f64) -> Result<AsymptoticForm> {
    Ok(AsymptoticForm {
        c_s: -beta / 8.0,
        c_sqrt: beta * a / 2.0,
        c_log: -(beta * a * (a - 1.0) / 8.0 + a / 4.0),
        c_const: ln_a_const(a, beta)?,
        source: AsymptoticSource::Limit,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardEdgeScaling {
    pub s: f64,
    /// `(N, ln LD(N, s/(4N)²))`.
    pub values: Vec<(usize, f64)>,
    pub limit: AsymptoticForm,
    pub ln_limit: f64,
}

impl HardEdgeScaling {
    /// `|ln LD(N) - ln limit|` along the `N` sequence.
    pub fn gaps(&self) -> Vec<f64> {
        self.values.iter().map(|&(_, v)| (v - self.ln_limit).abs()).collect()
    }
}

/// Evaluates the large-deviation formula at `s̃ = s/(4N)²` for each `N`.
pub fn scale_to_hard_edge(ns: &[usize], s: f64, a: f64, beta: f64) -> Result<HardEdgeScaling> {
    let limit = hard_edge_limit_form(a, beta)?;
    let values = ns
        .iter()
        .map(|&n| {
            let st = s / (4.0 * n as f64).powi(2);
            large_deviation_e0(n, st, a, beta).map(|v| (n, v))
        })
        .collect::<Result<_>>()?;
    Ok(HardEdgeScaling { s, values, limit, ln_limit: limit.ln_evaluate(s) })
}
