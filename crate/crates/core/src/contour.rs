//! Gap probabilities from low-dimensional integral representations.
//!
//! Three integrals are available for `βa/2 ∈ {1, 2}`:
//!
//! * the finite-N torus integral over `[-1/2, 1/2]^{βa/2}` normalized by the
//!   Morris integral ([`torus_e0_finite_n`]);
//! * the hard-edge torus integral over `[-π, π]^{βa/2}`, valid for
//!   `2/β ∈ Z⁺` ([`torus_e0_hard`]);
//! * the hard-edge integral over the contour that leaves the origin below the
//!   negative axis, circles the unit circle counter-clockwise and returns
//!   above the axis, valid for all `β > 0` ([`hard_contour_e0`]).
//!
//! The hard-edge prefactor is `B_{a,β} e^{-βs/8} (4/s)^{ν βa/4}` with
//! `ν = 2/β - 1` and measure `dz / (2πi z)`; for `βa/2 = 1` this is
//! `Γ(1+ν) (4/s)^{ν/2} I_ν(√s) e^{-βs/8}`.
//!
//! Contour points are written as `z = e^{2πi x}`. The left ray is
//! `x = -1/2 + it`, the circle is `x ∈ [-1/2, 1/2]` and the right ray is
//! `x = 1/2 + it`, `t ≥ 0`. For two points ordered along the contour the
//! pair factor is the principal power `(2 sin π(x_k - x_j))^{4/β}`.

use std::f64::consts::PI;
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::barnes::{ln_b_const, morris_value};
use crate::error::require_nonneg_integer;
use crate::quad::{periodic_trapezoid, tanh_sinh, tanh_sinh_abs, Endpoint};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourSpec {
    /// Radius of the circular part; the integrand is written for radius 1.
    pub inner_radius: f64,
    /// Starting resolution along the rays (doubling levels of tanh-sinh
    /// follow from the tolerance).
    pub ray_samples: usize,
    /// Starting resolution on the circle.
    pub circle_samples: usize,
    pub tol: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec { inner_radius: 1.0, ray_samples: 64, circle_samples: 64, tol: 1e-10 }
    }
}

impl ContourSpec {
    pub fn validate(&self) -> Result<()> {
        if self.ray_samples < 8 || self.circle_samples < 8 {
            return Err(Error::InvalidArgument("contour resolutions must be ≥ 8".into()));
        }
        if !(self.inner_radius > 0.0) || !self.inner_radius.is_finite() {
            return Err(Error::InvalidArgument("contour radius must be positive".into()));
        }
        if self.inner_radius != 1.0 {
            return Err(Error::InvalidArgument("only the unit-radius contour is implemented".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourValue {
    pub value: f64,
    /// Imaginary part of the integral before it was discarded (same scale as `value`).
    pub imag: f64,
    /// Change between the last two resolutions (same scale as `value`).
    pub error: f64,
    /// Combined contribution of the two rays (hard-edge contour only).
    pub ray_part: f64,
}

fn dimension(a: f64, beta: f64) -> Result<usize> {
    let n = require_nonneg_integer(beta * a / 2.0, "βa/2")?;
    if !(1..=2).contains(&n) {
        return Err(Error::Resource(format!("integral representations limited to βa/2 ∈ {{1, 2}}, got {n}")));
    }
    Ok(n)
}

fn check_imag(v: Complex64, what: &str) -> Result<()> {
    if v.im.abs() > 1e-9 * v.norm().max(1e-300) {
        return Err(Error::BranchInconsistency(format!("{what}: imaginary part {:.3e} of {:.3e}", v.im, v.re)));
    }
    Ok(())
}

/// Trapezoid rule on `[-1/2, 1/2]^n` (`n ≤ 2`) with doubling until the change
/// is below `tol/10` relative.
fn torus_trapezoid(
    n: usize,
    start: usize,
    tol: f64,
    max_res: usize,
    f: impl Fn(&[f64]) -> Complex64 + Sync,
) -> Result<(Complex64, f64, usize)> {
    let eval = |m: usize| -> Complex64 {
        if n == 1 {
            periodic_trapezoid(-0.5, 1.0, m, |x| f(&[x]))
        } else {
            let h = 1.0 / m as f64;
            (0..m)
                .into_par_iter()
                .map(|i| periodic_trapezoid(-0.5, 1.0, m, |y| f(&[-0.5 + h * i as f64, y])) * h)
                .collect::<Vec<_>>()
                .into_iter()
                .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
        }
    };
    let mut m = start.max(8);
    let mut prev = eval(m);
    loop {
        m *= 2;
        let cur = eval(m);
        let diff = (cur - prev).norm();
        if diff <= tol / 10.0 * cur.norm() {
            return Ok((cur, diff, m));
        }
        if m >= max_res {
            return Err(Error::NonConvergence { what: "torus trapezoid".into(), estimate: diff / cur.norm() });
        }
        prev = cur;
    }
}

/// `|e^{2πi x} - e^{2πi y}|`.
fn chord(x: f64, y: f64) -> f64 {
    (2.0 * (PI * (x - y)).sin()).abs()
}

/// Morris integral `∫_{[-1/2,1/2]^n} ∏ e^{πi x(a-b)} |1 + e^{2πi x}|^{a+b}
/// ∏|e^{2πi x_k} - e^{2πi x_j}|^{2λ} dx` by quadrature (`n ≤ 2`).
pub fn morris_quadrature(n: usize, a: f64, b: f64, lambda: f64, tol: f64) -> Result<f64> {
    let one = |x: f64, e: Endpoint| -> Complex64 {
        // |1 + e^{2πix}| = 2|cos πx|, written via the endpoint distance near ±1/2
        let c = match e {
            Endpoint::Left(d) | Endpoint::Right(d) if d < 0.25 => 2.0 * (PI * d).sin(),
            _ => 2.0 * (PI * x).cos(),
        };
        Complex64::from_polar(c.powf(a + b), PI * x * (a - b))
    };
    let v = match n {
        1 => tanh_sinh(-0.5, 0.5, tol, one)?.value,
        2 => {
            let err = Mutex::new(None);
            let outer = tanh_sinh(-0.5, 0.5, tol, |x, ex| {
                let inner = tanh_sinh(-0.5, 0.5, tol, |y, ey| one(y, ey) * chord(x, y).powf(2.0 * lambda));
                match inner {
                    Ok(r) => one(x, ex) * r.value,
                    Err(e) => {
                        *err.lock().unwrap() = Some(e);
                        Complex64::new(0.0, 0.0)
                    }
                }
            })?;
            if let Some(e) = err.into_inner().unwrap() {
                return Err(e);
            }
            outer.value
        }
        _ => return Err(Error::Resource("Morris quadrature limited to n ≤ 2".into())),
    };
    check_imag(v, "Morris integral")?;
    Ok(v.re)
}

/// `E_β(0; (0, x))` for `N` eigenvalues with weight `λ^{βa/2} e^{-βλ/2}` from
/// the `βa/2`-dimensional torus integral.
pub fn torus_e0_finite_n(x: f64, a: f64, beta: f64, big_n: usize, resolution: usize, tol: f64) -> Result<ContourValue> {
    let n = dimension(a, beta)?;
    let pa = -1.0 + 2.0 / beta;
    let pb = big_n as f64;
    let pair = 4.0 / beta;
    let one = |t: f64| -> Complex64 {
        let z = Complex64::from_polar(1.0, 2.0 * PI * t);
        let base = (2.0 * (PI * t).cos()).abs().powf(pa + pb);
        Complex64::from_polar(base, PI * t * (pa - pb)) * (z * x).exp()
    };
    let f = |p: &[f64]| -> Complex64 {
        match p {
            [t] => one(*t),
            [t, u] => one(*t) * one(*u) * chord(*t, *u).powf(pair),
            _ => unreachable!(),
        }
    };
    let max_res = if n == 1 { 1 << 16 } else { 1 << 11 };
    let (v, diff, _) = torus_trapezoid(n, resolution, tol, max_res, f)?;
    let norm = morris_value(n, pa, pb, 2.0 / beta)?;
    let pref = (-beta * pb * x / 2.0).exp() / norm;
    check_imag(v, "finite-N torus integral")?;
    Ok(ContourValue { value: pref * v.re, imag: pref * v.im, error: pref * diff, ray_part: 0.0 })
}

fn ln_hard_prefactor(s: f64, a: f64, beta: f64, n: usize) -> Result<f64> {
    let nu = 2.0 / beta - 1.0;
    Ok(ln_b_const(a, beta)? - beta * s / 8.0 + nu * n as f64 / 2.0 * (4.0 / s).ln())
}

/// `E^hard_β(0; (0, s))` from the `[-π, π]^{βa/2}` integral; needs `2/β ∈ Z⁺`.
pub fn torus_e0_hard(s: f64, a: f64, beta: f64, resolution: usize, tol: f64) -> Result<ContourValue> {
    let n = dimension(a, beta)?;
    let two_over_beta = require_nonneg_integer(2.0 / beta, "2/β")?;
    if two_over_beta == 0 {
        return Err(Error::ParameterQuantization("2/β must be a positive integer".into()));
    }
    let nu = two_over_beta as f64 - 1.0;
    let rs = s.sqrt();
    let one = |t: f64| -> Complex64 {
        let th = 2.0 * PI * t;
        Complex64::from_polar((rs * (th.cos() - 1.0)).exp(), nu * th)
    };
    let f = |p: &[f64]| -> Complex64 {
        match p {
            [t] => one(*t),
            [t, u] => one(*t) * one(*u) * chord(*t, *u).powi(2 * two_over_beta as i32),
            _ => unreachable!(),
        }
    };
    let max_res = if n == 1 { 1 << 16 } else { 1 << 11 };
    let (v, diff, _) = torus_trapezoid(n, resolution, tol, max_res, f)?;
    check_imag(v, "hard-edge torus integral")?;
    // e^{√s cos θ} was evaluated as e^{√s(cos θ - 1)}
    let pref = (ln_hard_prefactor(s, a, beta, n)? + n as f64 * rs).exp();
    Ok(ContourValue { value: pref * v.re, imag: pref * v.im, error: pref * diff, ray_part: 0.0 })
}

/// Pieces of the contour in the `x` coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Piece {
    Left,
    Circle,
    Right,
}

/// Point, derivative `dx/dp` and piece-local parameter for `p ∈ [0, 1]`.
fn piece_point(piece: Piece, p: f64, t_max: f64) -> (Complex64, Complex64) {
    match piece {
        Piece::Left => (Complex64::new(-0.5, t_max * (1.0 - p)), Complex64::new(0.0, -t_max)),
        Piece::Circle => (Complex64::new(-0.5 + p, 0.0), Complex64::new(1.0, 0.0)),
        Piece::Right => (Complex64::new(0.5, t_max * p), Complex64::new(0.0, t_max)),
    }
}

/// Nested tanh-sinh over `[0,1]²` for integrands of order one at most.
fn square(tol: f64, f: impl Fn(f64, f64) -> Complex64 + Sync) -> Result<Complex64> {
    let err = Mutex::new(None);
    let abs = tol * 1e-3;
    let outer = tanh_sinh_abs(0.0, 1.0, tol, abs, |u, _| match tanh_sinh_abs(0.0, 1.0, tol, abs, |v, _| f(u, v)) {
        Ok(r) => r.value,
        Err(e) => {
            *err.lock().unwrap() = Some(e);
            Complex64::new(0.0, 0.0)
        }
    })?;
    if let Some(e) = err.into_inner().unwrap() {
        return Err(e);
    }
    Ok(outer.value)
}

/// `E^hard_β(0; (0, s))` from the branch-cut contour integral.
pub fn hard_contour_e0(s: f64, a: f64, beta: f64, spec: &ContourSpec) -> Result<ContourValue> {
    spec.validate()?;
    let n = dimension(a, beta)?;
    if !(s > 0.0) {
        return Err(Error::Domain(format!("contour integral needs s > 0, got {s}")));
    }
    let nu = 2.0 / beta - 1.0;
    let rs = s.sqrt();
    let tol = spec.tol;
    // rays: |g| ≤ e^{-√s(cosh 2πt + 1)} relative to the circle's peak
    let t_max = (1.0 + 80.0 / rs).acosh() / (2.0 * PI);
    let g = |x: Complex64| -> Complex64 {
        let th = x * (2.0 * PI);
        (th.cos() * rs - rs).exp() * (Complex64::i() * th * nu).exp()
    };
    let pair_pow = 4.0 / beta;
    let pair = |x1: Complex64, x2: Complex64| -> Complex64 { (((x2 - x1) * PI).sin() * 2.0).powf(pair_pow) };

    let (total, rays) = match n {
        1 => {
            let piece = |pc: Piece| -> Result<Complex64> {
                Ok(tanh_sinh(0.0, 1.0, tol, |p, _| {
                    let (x, dx) = piece_point(pc, p, t_max);
                    g(x) * dx
                })?
                .value)
            };
            let (l, c, r) = (piece(Piece::Left)?, piece(Piece::Circle)?, piece(Piece::Right)?);
            (l + c + r, l + r)
        }
        _ => {
            use Piece::*;
            let pieces = [Left, Circle, Right];
            let mut total = Complex64::new(0.0, 0.0);
            let mut rays = Complex64::new(0.0, 0.0);
            for (i, &pi) in pieces.iter().enumerate() {
                for &pj in &pieces[i..] {
                    let v = if pi == pj {
                        // triangle p1 < p2: p2 = p1 + (1 - p1) v
                        square(tol, |u, v| {
                            let p2 = u + (1.0 - u) * v;
                            let (x1, d1) = piece_point(pi, u, t_max);
                            let (x2, d2) = piece_point(pj, p2, t_max);
                            g(x1) * g(x2) * pair(x1, x2) * d1 * d2 * (1.0 - u)
                        })?
                    } else if pi == Left && pj == Right {
                        // split along t_L = t_R, i.e. (1 - p1) = p2
                        let lo = square(tol, |q, v| {
                            let (x1, d1) = piece_point(Left, 1.0 - q, t_max);
                            let (x2, d2) = piece_point(Right, q * v, t_max);
                            g(x1) * g(x2) * pair(x1, x2) * d1 * d2 * q
                        })?;
                        let hi = square(tol, |r, v| {
                            let (x1, d1) = piece_point(Left, 1.0 - r * v, t_max);
                            let (x2, d2) = piece_point(Right, r, t_max);
                            g(x1) * g(x2) * pair(x1, x2) * d1 * d2 * r
                        })?;
                        lo + hi
                    } else {
                        square(tol, |u, v| {
                            let (x1, d1) = piece_point(pi, u, t_max);
                            let (x2, d2) = piece_point(pj, v, t_max);
                            g(x1) * g(x2) * pair(x1, x2) * d1 * d2
                        })?
                    };
                    if pi != Circle || pj != Circle {
                        rays += v;
                    }
                    total += v;
                }
            }
            // ordered pairs × 2!
            (total * 2.0, rays * 2.0)
        }
    };
    check_imag(total, "branch-cut contour integral")?;
    let pref = (ln_hard_prefactor(s, a, beta, n)? + n as f64 * rs).exp();
    Ok(ContourValue {
        value: pref * total.re,
        imag: pref * total.im,
        error: pref * tol * total.norm(),
        ray_part: pref * rays.re,
    })
}
