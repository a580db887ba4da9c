//! Acceptance battery: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hardgap::barnes::morris_value;
use hardgap::contour::{hard_contour_e0, morris_quadrature, torus_e0_finite_n, torus_e0_hard, ContourSpec};
use hardgap::gap::{
    asymptotic_e0, duality_check, exact_e0_finite_n, exact_e0_hard, exact_e_hard, fit_log_exponent, large_deviation_e0,
    ln_multi_f01_asympt, E0Variant, MultiConstant,
};
use hardgap::hypergeom::{pfq_alpha, ArgBlocks, HypergeomSpec};
use hardgap::jack::jack_c_eval;
use hardgap::mc::{estimate_gap, estimate_gap_finite_n, EnsembleSpec};
use hardgap::partitions::{jack_c_at_identity, partitions_of_weight, Alpha};
use hardgap::suite;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn bessel_i0(x: f64) -> f64 {
    let (mut term, mut sum) = (1.0f64, 1.0f64);
    for k in 1..400 {
        term *= (x / 2.0) * (x / 2.0) / (k * k) as f64;
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

fn within_budget(pass: bool, t: Duration, budget: f64) -> bool {
    pass && t.as_secs_f64() < budget
}

fn c1_bessel() -> Outcome {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for s in [1.0f64, 4.0, 16.0, 25.0] {
        let v = exact_e0_hard(s, 1.0, 2.0, 1e-14).unwrap().value;
        worst = worst.max(rel(v, (-s / 4.0).exp() * bessel_i0(s.sqrt())));
    }
    let t = t0.elapsed();
    outcome(
        within_budget(worst < 1e-10, t, 5.0),
        format!("max rel err {worst:.2e} (< 1e-10), {:.2}s (< 5s)", t.as_secs_f64()),
    )
}

fn c2_a_zero() -> Outcome {
    let mut worst = 0.0f64;
    for beta in [1.0, 2.0, 4.0, 2.5] {
        for s in [1.0f64, 10.0] {
            let v = exact_e0_hard(s, 0.0, beta, 1e-14).unwrap().value;
            worst = worst.max(rel(v, (-beta * s / 8.0).exp()));
        }
    }
    outcome(worst <= 4.0 * f64::EPSILON, format!("max rel err {worst:.2e} (≤ 4 ulp)"))
}

fn c3_routes() -> Outcome {
    let t0 = Instant::now();
    let (beta, a) = (3.0, 2.0 / 3.0);
    let series_f = exact_e0_finite_n(0.5, a, beta, 4, 1e-14).unwrap().value;
    let torus_f = torus_e0_finite_n(0.5, a, beta, 4, 64, 1e-12).unwrap().value;
    let e1 = rel(torus_f, series_f);
    let series_h = exact_e0_hard(2.0, a, beta, 1e-14).unwrap().value;
    let contour = hard_contour_e0(2.0, a, beta, &ContourSpec::default()).unwrap().value;
    let e2 = rel(contour, series_h);
    let series_t = exact_e0_hard(2.0, 2.0, 1.0, 1e-14).unwrap().value;
    let torus_h = torus_e0_hard(2.0, 2.0, 1.0, 64, 1e-12).unwrap().value;
    let e3 = rel(torus_h, series_t);
    let t = t0.elapsed();
    outcome(
        within_budget(e1 < 1e-8 && e2 < 1e-6 && e3 < 1e-6, t, 60.0),
        format!(
            "series/torus {e1:.2e} (< 1e-8), series/contour {e2:.2e} (< 1e-6), torus/series β=1 {e3:.2e} (< 1e-6), {:.2}s",
            t.as_secs_f64()
        ),
    )
}

fn c4_morris() -> Outcome {
    let mut worst = 0.0f64;
    for (a, b, l) in [(0.5, 1.5, 1.0), (2.0, 0.3, 0.5), (1.2, 1.2, 2.0)] {
        let closed = morris_value(1, a, b, l).unwrap();
        let quad = morris_quadrature(1, a, b, l, 1e-13).unwrap();
        worst = worst.max(rel(quad, closed));
    }
    outcome(worst < 1e-10, format!("max rel err {worst:.2e} (< 1e-10)"))
}

fn c5_barnes() -> Outcome {
    let lines = [suite::check_feq(), suite::check_mm(), suite::check_mm1(), suite::check_a1(), suite::check_a2()];
    let worst = lines.iter().map(|l| l.residual).fold(0.0, f64::max);
    let at = suite::check_at();
    let pass = worst < 1e-9 && lines.iter().all(|l| l.pass) && at.residual < 1e-12;
    outcome(pass, format!("max identity residual {worst:.2e} (< 1e-9), At {:.2e} (< 1e-12)", at.residual))
}

fn c6_duality() -> Outcome {
    let mut coeff = 0.0f64;
    let mut constant = 0.0f64;
    for (b, n, a) in suite::DUALITY_POINTS {
        let d = duality_check(b, n, a).unwrap();
        coeff = coeff.max(d.max_coefficient_diff());
        constant = constant.max(d.const_diff());
    }
    outcome(
        coeff < 1e-12 && constant < 1e-10,
        format!("coefficients {coeff:.2e} (< 1e-12), constants {constant:.2e} (< 1e-10)"),
    )
}

fn c7_jack() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_pos = 0.0f64;
    let mut worst_mixed = 0.0f64;
    for al in [0.5, 1.0, 2.0] {
        let alpha = Alpha::new(al).unwrap();
        for m in 1..=4usize {
            for trial in 0..3 {
                let x: Vec<f64> = (0..m)
                    .map(|_| if trial == 0 { rng.random_range(0.01..4.0) } else { rng.random_range(-4.0..4.0) })
                    .collect();
                let sx: f64 = x.iter().sum();
                for k in 0..=8u32 {
                    let vals: Vec<f64> =
                        partitions_of_weight(k, m).iter().map(|kap| jack_c_eval(kap, alpha, &x).unwrap()).collect();
                    let sum: f64 = vals.iter().sum();
                    let err = (sum - sx.powi(k as i32)).abs();
                    if trial == 0 {
                        worst_pos = worst_pos.max(err / sx.powi(k as i32));
                    } else {
                        let scale = vals.iter().map(|v| v.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
                        worst_mixed = worst_mixed.max(err / scale);
                    }
                }
            }
        }
    }
    let mut worst_id = 0.0f64;
    for al in [0.5, 1.0, 2.0] {
        let alpha = Alpha::new(al).unwrap();
        for m in 1..=5usize {
            for k in 0..=6u32 {
                for kap in partitions_of_weight(k, m).iter() {
                    let direct = jack_c_eval(kap, alpha, &vec![1.0; m]).unwrap();
                    worst_id = worst_id.max(rel(jack_c_at_identity(kap, alpha, m), direct));
                }
            }
        }
    }
    outcome(
        worst_pos < 1e-10 && worst_mixed < 1e-10 && worst_id < 1e-12,
        format!(
            "sum rule {worst_pos:.2e} (x > 0), {worst_mixed:.2e} (mixed signs, relative to Σ|C_κ|); identity hook {worst_id:.2e} (< 1e-12)"
        ),
    )
}

fn c8_monte_carlo() -> Outcome {
    let t0 = Instant::now();
    let spec = EnsembleSpec::new(2.0, 0.0, 20).unwrap();
    let i = estimate_gap_finite_n(&spec, 0.02, 0, 100_000, 1).unwrap();
    let z1 = (i.probability - (-0.4f64).exp()).abs() / i.stderr;

    let spec = EnsembleSpec::new(2.0, 1.0, 200).unwrap();
    let ii = estimate_gap(&spec, 1.0, 0, 100_000, 2).unwrap();
    let z2 = (ii.probability - exact_e0_hard(1.0, 1.0, 2.0, 1e-14).unwrap().value).abs() / ii.stderr;

    let spec = EnsembleSpec::new(2.0, 0.0, 200).unwrap();
    let iii = estimate_gap(&spec, 4.0, 1, 100_000, 3).unwrap();
    let z3 = (iii.probability - exact_e_hard(4.0, 0.0, 2.0, 1, 1e-10).unwrap().value).abs() / iii.stderr;
    let t = t0.elapsed();
    outcome(
        within_budget(z1 < 3.0 && z2 < 3.0 && z3 < 3.0, t, 600.0),
        format!(
            "|z| = {z1:.2}, {z2:.2} (stderr {:.4}), {z3:.2} (all < 3), {:.1}s (< 600s)",
            ii.stderr,
            t.as_secs_f64()
        ),
    )
}

fn c9_exponent() -> Outcome {
    let s: Vec<f64> = (0..=12).map(|k| 100.0 + 25.0 * k as f64).collect();
    let fit = fit_log_exponent(1.0, 2.0, &s, 1e-13).unwrap();
    let constant = fit.constant_for_slope(-0.25);
    let target = -0.5 * (2.0 * std::f64::consts::PI).ln();
    let pu = asymptotic_e0(1.0, 2.0, E0Variant::PU).unwrap().c_log + 0.0;
    let mg = asymptotic_e0(1.0, 2.0, E0Variant::MG).unwrap().c_log;
    outcome(
        (fit.slope + 0.25).abs() <= 0.02 && rel(constant, target) < 0.02,
        format!(
            "slope {:.4} (-0.25 ± 0.02), constant {constant:.4} vs {target:.4} ({:.2}%); PU exponent {pu}, MG exponent {mg} (not asserted)",
            fit.slope,
            100.0 * rel(constant, target)
        ),
    )
}

fn c10_hard_edge_limit() -> Outcome {
    let hard = exact_e0_hard(2.0, 1.0, 2.0, 1e-14).unwrap().value;
    let gaps: Vec<f64> = [10usize, 20, 40]
        .iter()
        .map(|&n| rel(exact_e0_finite_n(2.0 / (4.0 * n as f64), 1.0, 2.0, n, 1e-14).unwrap().value, hard))
        .collect();
    outcome(
        gaps[2] < 0.01,
        format!("relative gaps N=10,20,40: {:.2e}, {:.2e}, {:.2e} (last < 1e-2)", gaps[0], gaps[1], gaps[2]),
    )
}

fn c11_large_deviation() -> Outcome {
    let st = 0.3;
    let errs: Vec<f64> = [10usize, 20, 40]
        .iter()
        .map(|&n| {
            let exact = exact_e0_finite_n(4.0 * n as f64 * st, 1.0, 2.0, n, 1e-14).unwrap().ln_abs;
            let ld = large_deviation_e0(n, st, 1.0, 2.0).unwrap();
            ((ld - exact) / exact).abs()
        })
        .collect();
    outcome(
        errs[1] < errs[0] && errs[2] < errs[1],
        format!("|Δlog|/|log| N=10,20,40: {:.2e}, {:.2e}, {:.2e} (decreasing)", errs[0], errs[1], errs[2]),
    )
}

fn c12_multi_argument() -> Outcome {
    let t0 = Instant::now();
    let alpha = Alpha::new(1.0).unwrap();
    let mut ratios = Vec::new();
    for s in [100.0f64, 200.0, 400.0] {
        let spec = HypergeomSpec {
            upper: vec![],
            lower: vec![3.0],
            alpha,
            args: ArgBlocks::new(vec![(s / 4.0, 1), (s / 4.0, 2)]).unwrap(),
        };
        let series = pfq_alpha(&spec, 1e-12, 200).unwrap();
        let pred = ln_multi_f01_asympt(s, &[s], 1.0, 2.0, MultiConstant::Corrected).unwrap();
        ratios.push((series.ln_abs - pred).exp());
    }
    let d: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
    let t = t0.elapsed();
    outcome(
        within_budget(d[1] < d[0] && d[2] < d[1] && d[2] < 0.15, t, 300.0),
        format!(
            "series/prediction s=100,200,400: {:.5}, {:.5}, {:.5} (monotone to 1, last within 15%), {:.1}s",
            ratios[0],
            ratios[1],
            ratios[2],
            t.as_secs_f64()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Bessel closed form", c1_bessel),
        ("a = 0 exactness", c2_a_zero),
        ("route triangle", c3_routes),
        ("Morris closed form", c4_morris),
        ("Barnes identities", c5_barnes),
        ("duality", c6_duality),
        ("Jack sum rule and identity hook", c7_jack),
        ("Monte Carlo", c8_monte_carlo),
        ("exponent arbitration", c9_exponent),
        ("hard-edge limit of finite N", c10_hard_edge_limit),
        ("large-deviation trend", c11_large_deviation),
        ("multi-argument 0F1 trend", c12_multi_argument),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} {}: {}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
