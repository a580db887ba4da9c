use std::f64::consts::PI;

use hardgap::gap::{char_poly_moment_asympt, linstat_variance, LinearStatistic, VariancePrefactor};
use hardgap::mc::{sample_bidiagonal, EnsembleSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Cosine coefficients of `v((1 + cos θ)/2)` by the periodic trapezoid rule.
fn cosine_coefficients(v: impl Fn(f64) -> f64, kmax: usize, m: usize) -> Vec<f64> {
    let samples: Vec<f64> = (0..m).map(|j| v(0.5 * (1.0 + (2.0 * PI * j as f64 / m as f64).cos()))).collect();
    (0..=kmax)
        .map(|k| {
            2.0 / m as f64
                * samples
                    .iter()
                    .enumerate()
                    .map(|(j, &f)| f * (2.0 * PI * (k * j) as f64 / m as f64).cos())
                    .sum::<f64>()
        })
        .collect()
}

#[test]
fn variance_matches_fourier_series() {
    let (beta, a) = (2.0, 1.0);
    let ls = LinearStatistic::new(0.3, vec![0.5], a, beta).unwrap();
    let coeffs = cosine_coefficients(|t| ls.eval(t), 200, 4096);
    let fourier: f64 = coeffs.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c * c).sum::<f64>() / (2.0 * beta);
    let closed = linstat_variance(&ls, VariancePrefactor::TwoBeta).unwrap();
    assert!((fourier - closed).abs() < 1e-8, "{fourier} vs {closed}");
    let other = linstat_variance(&ls, VariancePrefactor::TwoOverBeta).unwrap();
    assert!((other - closed).abs() > 1e-3);
}

#[test]
fn variance_fourier_other_beta() {
    for (beta, a, s0, extra) in [(1.0, 2.0, 0.2, vec![0.4, 1.5]), (4.0, 0.5, 0.05, vec![])] {
        let ls = LinearStatistic::new(s0, extra, a, beta).unwrap();
        let coeffs = cosine_coefficients(|t| ls.eval(t), 400, 8192);
        let fourier: f64 =
            coeffs.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c * c).sum::<f64>() / (2.0 * beta);
        let closed = linstat_variance(&ls, VariancePrefactor::TwoBeta).unwrap();
        assert!((fourier - closed).abs() < 1e-8 * closed.max(1.0), "β={beta}: {fourier} vs {closed}");
    }
}

/// `ln det(s̃ + BᵀB / (4Nβ))` from the pivots of the tridiagonal `LDLᵀ`.
fn ln_shifted_det(diag: &[f64], off: &[f64], scale: f64, shift: f64) -> f64 {
    let mut acc = 0.0;
    let mut p_prev = 0.0;
    for i in 0..diag.len() {
        let e_prev = if i > 0 { off[i - 1] } else { 0.0 };
        let t_ii = (diag[i] * diag[i] + e_prev * e_prev) * scale + shift;
        let p = if i == 0 {
            t_ii
        } else {
            let t_off = diag[i - 1] * off[i - 1] * scale;
            t_ii - t_off * t_off / p_prev
        };
        acc += p.ln();
        p_prev = p;
    }
    acc
}

#[test]
fn char_poly_moment_against_monte_carlo() {
    let (beta, a, big_n, st) = (2.0, 1.0, 100usize, 0.5);
    let spec = EnsembleSpec::new(beta, 0.0, big_n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples = 40_000;
    let scale = 1.0 / (4.0 * big_n as f64 * beta);
    let logs: Vec<f64> = (0..samples)
        .map(|_| {
            let b = sample_bidiagonal(&spec, &mut rng).unwrap();
            beta * a / 2.0 * ln_shifted_det(&b.diag, &b.off, scale, st)
        })
        .collect();
    let shift = logs.iter().sum::<f64>() / samples as f64;
    let vals: Vec<f64> = logs.iter().map(|l| (l - shift).exp()).collect();
    let mean = vals.iter().sum::<f64>() / samples as f64;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
    let se = (var / samples as f64).sqrt() / mean;
    let ln_mc = shift + mean.ln();
    let ln_pred = char_poly_moment_asympt(st, a, beta, big_n).unwrap().ln();
    assert!((ln_mc - ln_pred).abs() < 3.0 * se, "MC {ln_mc} ± {se} vs {ln_pred}");
}
