//! Quadrature rules: Gauss–Legendre (nodes from `gauss-quad`) and a
//! double-exponential (tanh-sinh) rule for integrable endpoint singularities.

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use std::ops::{Add, Mul};

use crate::{Error, Result};

/// Scalar types a quadrature can accumulate.
pub trait Integrand: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
}

/// Gauss–Legendre rule on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct UnitRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl UnitRule {
    pub fn gauss_legendre(order: usize) -> Self {
        let rule = GaussLegendre::new(order.max(2)).expect("order ≥ 2");
        let (nodes, weights) =
            rule.into_node_weight_pairs().into_iter().map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w)).unzip();
        UnitRule { nodes, weights }
    }

    pub fn integrate<T: Integrand>(&self, a: f64, b: f64, f: impl Fn(f64) -> T) -> T {
        let len = b - a;
        self.nodes.iter().zip(&self.weights).fold(T::zero(), |acc, (&x, &w)| acc + f(a + len * x) * (w * len))
    }
}

/// `u(t) = 1/(1+e^{π sinh t})` and `du/dt` up to sign, for `t ≥ 0`.
/// Near-endpoint distances are produced directly so no precision is lost.
fn de_node(t: f64) -> (f64, f64) {
    let e = (-std::f64::consts::PI * t.sinh()).exp();
    let u = e / (1.0 + e);
    let w = std::f64::consts::PI * t.cosh() * e / ((1.0 + e) * (1.0 + e));
    (u, w)
}

/// Tanh-sinh quadrature of `f` over `[a, b]`. `f` receives the abscissa and
/// its distance to the nearer endpoint (`x - a` or `b - x`, signed so that
/// `x = a + d` for the left half and `x = b - d` for the right half).
pub fn tanh_sinh<T: Integrand>(a: f64, b: f64, tol: f64, f: impl Fn(f64, Endpoint) -> T) -> Result<QuadResult<T>> {
    tanh_sinh_abs(a, b, tol, 0.0, f)
}

/// [`tanh_sinh`] that also stops once the change is below `abs_tol`.
pub fn tanh_sinh_abs<T: Integrand>(
    a: f64,
    b: f64,
    tol: f64,
    abs_tol: f64,
    f: impl Fn(f64, Endpoint) -> T,
) -> Result<QuadResult<T>> {
    let len = b - a;
    let eval = |t: f64| -> Option<T> {
        let (u, w) = de_node(t.abs());
        if u == 0.0 || w == 0.0 {
            return None;
        }
        let d = len * u;
        let v = if t < 0.0 { f(a + d, Endpoint::Left(d)) } else { f(b - d, Endpoint::Right(d)) };
        Some(v * (w * len))
    };
    let tmax = 6.5;
    let mut h = 1.0;
    let mut total = eval(0.0).unwrap_or(T::zero());
    let mut k = 1;
    while (k as f64) * h <= tmax {
        let t = k as f64 * h;
        for s in [-t, t] {
            if let Some(v) = eval(s) {
                total = total + v;
            }
        }
        k += 1;
    }
    let mut prev = total * h;
    let mut last_diff = f64::INFINITY;
    for _level in 1..=14 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= tmax {
            let t = k as f64 * h;
            for s in [-t, t] {
                if let Some(v) = eval(s) {
                    total = total + v;
                }
            }
            k += 2;
        }
        let cur = total * h;
        let diff = (cur + prev * -1.0).magnitude();
        if diff <= tol * cur.magnitude() || diff <= abs_tol || diff < 1e-300 {
            return Ok(QuadResult { value: cur, error: diff });
        }
        last_diff = diff;
        prev = cur;
    }
    Err(Error::NonConvergence { what: "tanh-sinh quadrature".into(), estimate: last_diff })
}

#[derive(Debug, Clone, Copy)]
pub enum Endpoint {
    Left(f64),
    Right(f64),
}

/// Trapezoid rule over one period `[a, a + period)` with `n` points.
pub fn periodic_trapezoid<T: Integrand>(a: f64, period: f64, n: usize, f: impl Fn(f64) -> T) -> T {
    let h = period / n as f64;
    (0..n).fold(T::zero(), |acc, i| acc + f(a + h * i as f64)) * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_polynomials_exact() {
        let r = UnitRule::gauss_legendre(5);
        let v: f64 = r.integrate(0.0, 2.0, |x| x.powi(9));
        assert_relative_eq!(v, 2f64.powi(10) / 10.0, max_relative = 1e-13);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} (1-x)^{-1/3} dx = B(1/2, 2/3)
        let r = tanh_sinh(0.0, 1.0, 1e-12, |_x, e| {
            let (x, y) = match e {
                Endpoint::Left(d) => (d, 1.0 - d),
                Endpoint::Right(d) => (1.0 - d, d),
            };
            x.powf(-0.5) * y.powf(-1.0 / 3.0)
        })
        .unwrap();
        let exact = (crate::special::ln_gamma(0.5) + crate::special::ln_gamma(2.0 / 3.0)
            - crate::special::ln_gamma(0.5 + 2.0 / 3.0))
        .exp();
        assert_relative_eq!(r.value, exact, max_relative = 1e-11);
    }

    #[test]
    fn trapezoid_periodic_is_spectral() {
        let v: f64 = periodic_trapezoid(-std::f64::consts::PI, 2.0 * std::f64::consts::PI, 32, |t| (t.cos()).exp());
        // 2π I_0(1)
        assert_relative_eq!(v, 2.0 * std::f64::consts::PI * 1.266_065_877_752_008_4, max_relative = 1e-14);
    }
}
