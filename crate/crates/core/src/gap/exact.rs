//! Exact gap probabilities from the hypergeometric series.

use rayon::prelude::*;
use serde::Serialize;

use super::GapQuery;
use crate::error::require_nonneg_integer;
use crate::hypergeom::{f01_repeated, pfq_alpha, ArgBlocks, HypergeomSpec, SeriesResult};
use crate::jack::max_weight;
use crate::quad::UnitRule;
use crate::special::{ln_factorial, ln_gamma};
use crate::{Alpha, Error, Result};

/// A probability with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapValue {
    pub value: f64,
    pub ln_value: f64,
    /// Absolute error estimate (difference of the last two quadrature orders).
    pub error: f64,
    /// Gauss–Legendre order per dimension that was accepted.
    pub order: usize,
}

/// Multiplicity of each `s y_j / 4` block in the `₀F₁` of the `n`-eigenvalue
/// integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum YMultiplicity {
    /// `β` copies per eigenvalue (the finite-dimensional integral's natural count).
    Beta,
    /// `a` copies per eigenvalue; needs integer `a`.
    A,
}

fn unit_series() -> SeriesResult {
    SeriesResult {
        value: 1.0,
        ln_abs: 0.0,
        sign: 1.0,
        max_weight_used: 0,
        tail_estimate: 0.0,
        terminated_exactly: true,
        term_count: 1,
        condition: 1.0,
        converged: true,
    }
}

/// `E^hard_β(0; (0, s)) = e^{-βs/8} ₀F₁^{(β/2)}(a; (s/4)^{βa/2})`.
pub fn exact_e0_hard(s: f64, a: f64, beta: f64, tol: f64) -> Result<SeriesResult> {
    let m = GapQuery::hard_edge(beta, a, 0, s).validate_exact()?;
    let alpha = Alpha::new(beta / 2.0)?;
    let series =
        if m == 0 || s == 0.0 { unit_series() } else { f01_repeated(a, s / 4.0, m, alpha, tol, max_weight())? };
    Ok(series.times_exp(-beta * s / 8.0))
}

/// `E_β(0; (0, x))` for `N` eigenvalues with weight `λ^{βa/2} e^{-βλ/2}`:
/// `e^{-βNx/2} ₁F₁^{(β/2)}(-N; a; (-x)^{βa/2})`, a terminating sum.
pub fn exact_e0_finite_n(x: f64, a: f64, beta: f64, big_n: usize, tol: f64) -> Result<SeriesResult> {
    let m = GapQuery::finite_n(beta, a, 0, x, big_n).validate_exact()?;
    let alpha = Alpha::new(beta / 2.0)?;
    let series = if m == 0 || x == 0.0 {
        unit_series()
    } else {
        let spec =
            HypergeomSpec { upper: vec![-(big_n as f64)], lower: vec![a], alpha, args: ArgBlocks::single(-x, m)? };
        pfq_alpha(&spec, tol, max_weight())?
    };
    Ok(series.times_exp(-beta * big_n as f64 * x / 2.0))
}

/// `ln A_β(n, a)`, the prefactor of the `n`-eigenvalue integral.
pub fn ln_en_prefactor(n: usize, a: f64, beta: f64) -> f64 {
    let nf = n as f64;
    let mut acc = -2.0 * nf * std::f64::consts::LN_2 - ln_factorial(n)
        + nf * (beta / 2.0).ln()
        + nf * (a + nf - 1.0) * beta * (beta / 4.0).ln()
        + nf * ln_gamma(1.0 + beta / 2.0);
    for j in 0..2 * n {
        acc -= ln_gamma(a * beta / 2.0 + 1.0 + j as f64 * beta / 2.0);
    }
    acc
}

/// Nodes and weights of the nested Gauss–Legendre rule on the ordered simplex
/// `0 < y_1 < … < y_n < 1`.
fn simplex_nodes(rule: &UnitRule, n: usize) -> Vec<(Vec<f64>, f64)> {
    let mut out = vec![(Vec::with_capacity(n), 1.0)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * rule.nodes.len());
        for (ys, w) in &out {
            let lo = ys.last().copied().unwrap_or(0.0);
            let len = 1.0 - lo;
            for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
                let mut y = ys.clone();
                y.push(lo + len * x);
                next.push((y, w * wx * len));
            }
        }
        out = next;
    }
    out
}

const EN_MAX_NODES: usize = 400_000;

/// `E^hard_β(n; (0, s))` for `1 ≤ n ≤ 3` from the `n`-fold integral over the
/// positions of the eigenvalues inside the gap.
///
/// The symmetric integrand is integrated over the ordered simplex (so the
/// `|y_k - y_j|^β` factor is smooth) and multiplied by `n!`. The Gauss–Legendre
/// order starts at `quad_order` and grows by half until two successive orders
/// agree to `tol` relative.
pub fn exact_en_hard(
    s: f64,
    a: f64,
    beta: f64,
    n: usize,
    tol: f64,
    quad_order: usize,
    multiplicity: YMultiplicity,
) -> Result<GapValue> {
    if n == 0 {
        let r = exact_e0_hard(s, a, beta, tol)?;
        return Ok(GapValue { value: r.value, ln_value: r.ln_abs, error: r.tail_estimate, order: 0 });
    }
    if n > 3 {
        return Err(Error::Resource(format!("n-eigenvalue quadrature limited to n ≤ 3, got {n}")));
    }
    let m = GapQuery::hard_edge(beta, a, n, s).validate_exact()?;
    let beta_int = beta.round() as usize;
    let y_mult = match multiplicity {
        YMultiplicity::Beta => beta_int,
        YMultiplicity::A => require_nonneg_integer(a, "a (block multiplicity)")?,
    };
    if s == 0.0 {
        return Ok(GapValue { value: 0.0, ln_value: f64::NEG_INFINITY, error: 0.0, order: 0 });
    }
    let alpha = Alpha::new(beta / 2.0)?;
    let inner_tol = (tol * 1e-2).max(1e-15);
    let c = a + 2.0 * n as f64;
    let integrand = |ys: &[f64]| -> Result<f64> {
        let mut w = 1.0;
        for (k, &yk) in ys.iter().enumerate() {
            w *= (1.0 - yk).powi(m as i32);
            for &yj in &ys[..k] {
                w *= (yk - yj).powi(beta_int as i32);
            }
        }
        if w == 0.0 {
            return Ok(0.0);
        }
        let mut blocks = vec![(s / 4.0, m)];
        blocks.extend(ys.iter().map(|&y| (s * y / 4.0, y_mult)));
        if blocks.iter().all(|b| b.1 == 0) {
            return Ok(w);
        }
        let spec = HypergeomSpec { upper: vec![], lower: vec![c], alpha, args: ArgBlocks::new(blocks)? };
        Ok(w * pfq_alpha(&spec, inner_tol, max_weight())?.value)
    };

    let mut order = quad_order.max(2);
    let mut prev: Option<f64> = None;
    loop {
        if order.pow(n as u32) > EN_MAX_NODES {
            let est = prev.map_or(f64::INFINITY, |p| p.abs());
            return Err(Error::NonConvergence { what: format!("{n}-eigenvalue quadrature"), estimate: est });
        }
        let rule = UnitRule::gauss_legendre(order);
        let nodes = simplex_nodes(&rule, n);
        let vals: Vec<f64> = nodes.par_iter().map(|(ys, w)| integrand(ys).map(|v| v * w)).collect::<Result<_>>()?;
        let integral: f64 = vals.iter().sum::<f64>() * (1..=n).product::<usize>() as f64;
        if let Some(p) = prev {
            let diff = (integral - p).abs();
            if diff <= tol * integral.abs() {
                let pow = n as f64 + beta / 2.0 * n as f64 * (n as f64 + a - 1.0);
                let ln_pref = ln_en_prefactor(n, a, beta) + pow * s.ln() - beta * s / 8.0;
                let ln_value = ln_pref + integral.ln();
                return Ok(GapValue { value: ln_value.exp(), ln_value, error: diff * ln_pref.exp(), order });
            }
        }
        prev = Some(integral);
        order += order / 2;
    }
}

/// `E^hard_β(n; (0, s))` for any `n ≤ 3` with default quadrature settings.
pub fn exact_e_hard(s: f64, a: f64, beta: f64, n: usize, tol: f64) -> Result<GapValue> {
    exact_en_hard(s, a, beta, n, tol, 12, YMultiplicity::Beta)
}

/// Density of the `(k+1)`-th smallest eigenvalue at the hard edge,
/// `-d/ds Σ_{l≤k} E(l; (0, s))`, by a central difference of step `h`.
pub fn smallest_eigenvalue_pdf(k: usize, s: f64, h: f64, a: f64, beta: f64, tol: f64) -> Result<f64> {
    if k > 3 {
        return Err(Error::Resource(format!("smallest-eigenvalue density limited to k ≤ 3, got {k}")));
    }
    if !(h > 0.0) || !(s > h) {
        return Err(Error::InvalidArgument(format!("need 0 < h < s, got h = {h}, s = {s}")));
    }
    let cumulative = |x: f64| -> Result<f64> {
        let mut acc = 0.0;
        for l in 0..=k {
            acc += exact_e_hard(x, a, beta, l, tol)?.value;
        }
        Ok(acc)
    };
    Ok(-(cumulative(s + h)? - cumulative(s - h)?) / (2.0 * h))
}
