//! Identity battery behind `hardgap check`, and the side-by-side numbers
//! behind `hardgap report`.

use serde::Serialize;

use crate::barnes::identities;
use crate::contour::torus_e0_finite_n;
use crate::error::Result;
use crate::gap::{
    asymptotic_e0, duality_check, exact_e0_finite_n, fit_log_exponent, hard_edge_limit_form, large_deviation_e0,
    large_deviation_e0_printed, ln_multi_f01_asympt, E0Variant, MultiConstant,
};
use crate::hypergeom::{pfq_alpha_with, ArgBlocks, HypergeomSpec, JackRoute};
use crate::partitions::Alpha;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub detail: String,
    /// Largest residual over the grid; `NaN` if a point failed to evaluate.
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckLine {
    fn from_residuals(name: &str, detail: String, tolerance: f64, residuals: Vec<Result<f64>>) -> Self {
        let mut worst = 0.0f64;
        let mut failed = None;
        for r in residuals {
            match r {
                Ok(v) if v.is_finite() => worst = worst.max(v.abs()),
                Ok(_) => worst = f64::NAN,
                Err(e) => failed = Some(e.to_string()),
            }
        }
        let detail = match failed {
            Some(e) => format!("{detail}; error: {e}"),
            None => detail,
        };
        CheckLine { name: name.into(), detail, residual: worst, tolerance, pass: worst <= tolerance }
    }

    pub fn render(&self) -> String {
        format!(
            "{} {:<18} residual={:.3e} tol={:.1e}  {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.tolerance,
            self.detail
        )
    }
}

const FEQ_Z: [f64; 4] = [0.5, 1.1, 2.3, 4.9];
const FEQ_TAU: [f64; 3] = [0.5, 1.0, 2.0];

pub fn check_feq() -> CheckLine {
    let mut r = Vec::new();
    for &z in &FEQ_Z {
        for &t in &FEQ_TAU {
            r.push(identities::unit_shift(z, t));
            r.push(identities::tau_shift(z, t));
        }
    }
    CheckLine::from_residuals("feq", "both shift equations, z∈{0.5,1.1,2.3,4.9}, τ∈{0.5,1,2}".into(), 1e-9, r)
}

pub fn check_mm() -> CheckLine {
    let pts = [(2.3, 0.6), (1.5, 2.0), (3.0, 0.5)];
    let r = pts.iter().map(|&(n, t)| identities::inversion(n, t)).collect();
    CheckLine::from_residuals("mm", "inversion at (n,τ)∈{(2.3,0.6),(1.5,2),(3,0.5)}".into(), 1e-9, r)
}

pub fn check_mm1() -> CheckLine {
    let mut r = Vec::new();
    for &a in &[1.5, 3.0] {
        for &t in &[0.5, 2.0] {
            r.push(identities::inversion_f(a, t));
        }
    }
    CheckLine::from_residuals("mm1", "f inversion, a∈{1.5,3}, τ∈{0.5,2}".into(), 1e-9, r)
}

pub fn check_a1() -> CheckLine {
    let pts = [(2.0, 1.0, 1.0), (2.0, 2.0, 1.5), (1.0, 2.0, 3.0)];
    let mut r = Vec::new();
    for &(b, n, a) in &pts {
        r.push(identities::gamma_product_a1(b, n, a));
        r.push(identities::gamma_product_a1_barnes(b, n, a));
    }
    CheckLine::from_residuals("a1", "(β,n,a)∈{(2,1,1),(2,2,1.5),(1,2,3)}".into(), 1e-10, r)
}

pub fn check_a2() -> CheckLine {
    let pts = [(2.0, 2usize, 1.0), (4.0, 1, 2.0)];
    let r = pts.iter().map(|&(b, n, a)| identities::gamma_ratio_a2(b, n, a)).collect();
    CheckLine::from_residuals("a2", "(β,n,a)∈{(2,2,1),(4,1,2)}".into(), 1e-10, r)
}

pub fn check_at() -> CheckLine {
    let mut r = Vec::new();
    for &beta in &[1.0, 2.0, 4.0] {
        for m in 1..=3 {
            let a = 2.0 * m as f64 / beta;
            r.push(identities::a_const_vs_tau_hard(a, beta));
        }
    }
    CheckLine::from_residuals("At", "ln A − ln τ^hard, βa/2∈{1,2,3}, β∈{1,2,4}".into(), 1e-12, r)
}

pub const DUALITY_POINTS: [(f64, f64, f64); 3] = [(2.0, 1.0, 2.0), (4.0, 0.0, 2.0), (1.0, 1.0, 4.0)];

pub fn check_duality() -> CheckLine {
    let r = DUALITY_POINTS
        .iter()
        .map(|&(b, n, a)| duality_check(b, n, a).map(|d| d.max_coefficient_diff().max(d.const_diff())))
        .collect();
    CheckLine::from_residuals("duality", "(β,n,a)∈{(2,1,2),(4,0,2),(1,1,4)}".into(), 1e-10, r)
}

/// Identity, branching and monomial evaluation of the same `₀F₁` / `₁F₁`
/// series, plus the torus integral against the terminating series.
pub fn check_routes() -> CheckLine {
    let mut r = Vec::new();
    for &al in &[0.5, 1.0, 2.0] {
        let alpha = Alpha::new(al).expect("positive");
        let spec = HypergeomSpec {
            upper: vec![-2.5],
            lower: vec![1.7],
            alpha,
            args: ArgBlocks::single(0.6, 3).expect("valid"),
        };
        let vals: Vec<Result<f64>> = [JackRoute::Identity, JackRoute::Branching, JackRoute::Monomial]
            .iter()
            .map(|&route| pfq_alpha_with(&spec, 1e-14, 24, route).map(|s| s.value))
            .collect();
        if let (Ok(i), Ok(b), Ok(m)) = (&vals[0], &vals[1], &vals[2]) {
            r.push(Ok(((i - b) / i).abs().max(((i - m) / i).abs())));
        } else {
            r.extend(vals.into_iter().filter(|v| v.is_err()));
        }
    }
    let (beta, a, big_n, x) = (3.0, 2.0 / 3.0, 4usize, 0.5);
    let series = exact_e0_finite_n(x, a, beta, big_n, 1e-14);
    let torus = torus_e0_finite_n(x, a, beta, big_n, 64, 1e-12);
    r.push(match (series, torus) {
        (Ok(s), Ok(t)) => Ok(((s.value - t.value) / s.value).abs()),
        (Err(e), _) | (_, Err(e)) => Err(e),
    });
    CheckLine::from_residuals(
        "route-equivalence",
        "identity/branching/monomial series; torus vs series at (β,a,N,x)=(3,2/3,4,0.5)".into(),
        1e-10,
        r,
    )
}

pub fn identity_suite() -> Vec<CheckLine> {
    vec![check_feq(), check_mm(), check_mm1(), check_a1(), check_a2(), check_at(), check_duality(), check_routes()]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportLine {
    pub quantity: String,
    pub variant: String,
    pub value: f64,
}

fn line(q: &str, v: &str, value: f64) -> ReportLine {
    ReportLine { quantity: q.into(), variant: v.into(), value }
}

pub const REPORT_FIT_S: [f64; 7] = [100.0, 150.0, 200.0, 250.0, 300.0, 350.0, 400.0];

/// Exponent and constant of `ln E(0;(0,s))` beyond `-βs/8 + (βa/2)√s` from
/// each closed form and from a fit to the series, with printed-versus-corrected
/// variants of the large-`N` and multi-argument forms.
pub fn report(beta: f64, a: f64, tol: f64) -> Result<Vec<ReportLine>> {
    let mut out = Vec::new();
    for (name, v) in [("PU", E0Variant::PU), ("MG", E0Variant::MG), ("Limit", E0Variant::Limit)] {
        match asymptotic_e0(a, beta, v) {
            Ok(f) => {
                out.push(line("log_exponent", name, f.c_log));
                out.push(line("constant", name, f.c_const));
            }
            Err(e) => out.push(line("log_exponent", &format!("{name} ({e})"), f64::NAN)),
        }
    }
    let fit = fit_log_exponent(a, beta, &REPORT_FIT_S, tol)?;
    out.push(line("log_exponent", "fitted s∈[100,400]", fit.slope));
    out.push(line("constant", "fitted", fit.intercept));
    let limit = hard_edge_limit_form(a, beta)?;
    out.push(line("constant", "fitted at limit slope", fit.constant_for_slope(limit.c_log)));

    let (big_n, st) = (20usize, 0.3);
    if let Ok(exact) = exact_e0_finite_n(4.0 * big_n as f64 * st, a, beta, big_n, tol) {
        out.push(line("ln E0 N=20 s̃=0.3", "series", exact.ln_abs));
    }
    out.push(line("ln E0 N=20 s̃=0.3", "large deviation corrected", large_deviation_e0(big_n, st, a, beta)?));
    out.push(line("ln E0 N=20 s̃=0.3", "large deviation printed", large_deviation_e0_printed(big_n, st, a, beta)?));

    let s = 200.0;
    out.push(line(
        "ln 0F1 multi s0=s1=200",
        "corrected",
        ln_multi_f01_asympt(s, &[s], a, beta, MultiConstant::Corrected)?,
    ));
    out.push(line("ln 0F1 multi s0=s1=200", "printed", ln_multi_f01_asympt(s, &[s], a, beta, MultiConstant::Printed)?));
    Ok(out)
}
