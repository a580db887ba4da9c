//! Hypergeometric series `ₚFq^{(α)}(a; b; x)` over partitions.
//!
//! Terms are `[a]_κ / [b]_κ · C_κ(x) / |κ|!`, summed weight layer by weight
//! layer in signed-log form with compensated accumulation. Within a layer,
//! terms are computed in parallel and reduced in canonical partition order.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::jack::{jack_expansion, monomial_eval};
use crate::logspace::{LogSum, LogValue};
use crate::partitions::{gen_pochhammer_log, ln_jack_c_at_identity, partitions_of_weight, Alpha, Partition};
use crate::special::ln_factorial;
use crate::{Error, Result};

/// Largest tolerated `Σ|term| / |Σ term|`.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Argument vector as blocks `(value, multiplicity)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArgBlocks {
    blocks: Vec<(f64, usize)>,
}

impl ArgBlocks {
    pub fn new(blocks: Vec<(f64, usize)>) -> Result<Self> {
        if blocks.iter().map(|b| b.1).sum::<usize>() == 0 {
            return Err(Error::InvalidArgument("argument blocks have zero total multiplicity".into()));
        }
        if blocks.iter().any(|b| !b.0.is_finite()) {
            return Err(Error::Domain("non-finite hypergeometric argument".into()));
        }
        Ok(ArgBlocks { blocks })
    }

    pub fn single(value: f64, multiplicity: usize) -> Result<Self> {
        Self::new(vec![(value, multiplicity)])
    }

    pub fn blocks(&self) -> &[(f64, usize)] {
        &self.blocks
    }

    pub fn total_multiplicity(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    /// Sorted by value, equal values merged, zero values and empty blocks
    /// dropped (they do not contribute to any `C_κ`).
    pub fn canonical(&self) -> Vec<(f64, usize)> {
        let mut v: Vec<(f64, usize)> = self.blocks.iter().copied().filter(|b| b.1 > 0 && b.0 != 0.0).collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, usize)> = Vec::with_capacity(v.len());
        for (x, m) in v {
            match out.last_mut() {
                Some(last) if last.0 == x => last.1 += m,
                _ => out.push((x, m)),
            }
        }
        out
    }

    pub fn scaled(&self, c: f64) -> ArgBlocks {
        ArgBlocks { blocks: self.blocks.iter().map(|&(x, m)| (c * x, m)).collect() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypergeomSpec {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub alpha: Alpha,
    pub args: ArgBlocks,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub value: f64,
    pub ln_abs: f64,
    pub sign: f64,
    pub max_weight_used: usize,
    /// Magnitude `Σ|term|` of the last layer summed (absolute, not relative).
    pub tail_estimate: f64,
    pub terminated_exactly: bool,
    pub term_count: usize,
    /// `Σ|term| / |Σ term|`.
    pub condition: f64,
    /// `false` if the stopping rule never fired before `max_weight`.
    pub converged: bool,
}

impl SeriesResult {
    pub fn log_value(&self) -> LogValue {
        if self.sign == 0.0 {
            LogValue::ZERO
        } else {
            LogValue { sign: self.sign, ln_abs: self.ln_abs }
        }
    }

    /// Multiplies the value by `exp(ln_factor)`.
    pub fn times_exp(mut self, ln_factor: f64) -> Self {
        self.ln_abs += ln_factor;
        self.value = self.log_value().to_f64();
        self.tail_estimate *= ln_factor.exp();
        self
    }
}

/// How `C_κ(x)` is obtained inside a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JackRoute {
    /// Identity specialization when all arguments coincide, branching otherwise.
    Auto,
    /// Closed product `C_κ(1^m)·t^{|κ|}`; requires a single distinct argument.
    Identity,
    /// Branching rule over horizontal strips, any argument vector.
    Branching,
    /// Full monomial expansion (slow; for cross-checking).
    Monomial,
}

pub fn pfq_alpha(spec: &HypergeomSpec, tol: f64, max_weight: usize) -> Result<SeriesResult> {
    pfq_alpha_with(spec, tol, max_weight, JackRoute::Auto)
}

/// Single-block `₀F₁^{(α)}(c; (t)^m)` through the identity specialization.
pub fn f01_repeated(c: f64, t: f64, m: usize, alpha: Alpha, tol: f64, max_weight: usize) -> Result<SeriesResult> {
    let spec = HypergeomSpec { upper: vec![], lower: vec![c], alpha, args: ArgBlocks::single(t, m)? };
    if t == 0.0 {
        return pfq_alpha_with(&spec, tol, max_weight, JackRoute::Auto);
    }
    pfq_alpha_with(&spec, tol, max_weight, JackRoute::Identity)
}

pub fn pfq_alpha_with(spec: &HypergeomSpec, tol: f64, max_weight: usize, route: JackRoute) -> Result<SeriesResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let blocks = spec.args.canonical();
    let alpha = spec.alpha;
    let m: usize = blocks.iter().map(|b| b.1).sum();
    if m == 0 {
        return Ok(SeriesResult {
            value: 1.0,
            ln_abs: 0.0,
            sign: 1.0,
            max_weight_used: 0,
            tail_estimate: 0.0,
            terminated_exactly: true,
            term_count: 1,
            condition: 1.0,
            converged: true,
        });
    }
    let route = match route {
        JackRoute::Auto if blocks.len() == 1 => JackRoute::Identity,
        JackRoute::Auto => JackRoute::Branching,
        JackRoute::Identity if blocks.len() != 1 => {
            return Err(Error::InvalidArgument("identity route needs a single distinct argument".into()))
        }
        r => r,
    };
    let t_max = blocks.iter().map(|b| b.0.abs()).fold(0.0, f64::max);
    let ln_t = t_max.ln();
    let scaled: Vec<f64> = blocks.iter().flat_map(|&(x, k)| std::iter::repeat_n(x / t_max, k)).collect();

    let mut jack: Box<dyn JackLayer> = match route {
        JackRoute::Identity => Box::new(IdentityLayer { alpha, m, sign: blocks[0].0.signum() }),
        JackRoute::Branching => Box::new(BranchingEvaluator::new(scaled, alpha)),
        JackRoute::Monomial => Box::new(MonomialLayer { alpha, x: scaled }),
        JackRoute::Auto => unreachable!(),
    };

    // terminating series: an upper parameter equal to -N
    let terminating = spec.upper.iter().filter(|&&a| a <= 0.0 && a == a.round()).map(|&a| (-a) as usize).min();
    let limit = match terminating {
        Some(n) => {
            let w = n * m;
            if w > max_weight {
                return Err(Error::Resource(format!(
                    "terminating series needs weight {w}, above the allowed {max_weight}"
                )));
            }
            w
        }
        None => max_weight,
    };

    let mut total = LogSum::new();
    let mut quiet = 0;
    let mut last_layer = 0.0;
    let mut used = 0;
    let mut converged = terminating.is_some();
    for k in 0..=limit {
        let kw = k as u32;
        let jack_vals = jack.layer(kw)?;
        let ln_kfact = ln_factorial(k);
        let terms: Vec<Result<LogValue>> = jack_vals
            .par_iter()
            .map(|(kappa, c)| {
                let mut coef = LogValue::ONE;
                for &a in &spec.upper {
                    coef = coef * gen_pochhammer_log(a, kappa, alpha);
                }
                if coef.is_zero() || c.is_zero() {
                    return Ok(LogValue::ZERO);
                }
                for &b in &spec.lower {
                    let d = gen_pochhammer_log(b, kappa, alpha);
                    if d.is_zero() {
                        return Err(Error::LowerParameterPole { partition: kappa.to_string() });
                    }
                    coef = coef * d.recip();
                }
                let scale = LogValue { sign: 1.0, ln_abs: k as f64 * ln_t - ln_kfact };
                Ok(coef * *c * scale)
            })
            .collect();
        let mut layer = LogSum::new();
        for t in terms {
            let t = t?;
            layer.add(t);
            total.add(t);
        }
        used = k;
        let layer_abs = layer.abs_value();
        last_layer = layer_abs.to_f64();
        if terminating.is_none() {
            let tot = total.value();
            let small = layer_abs.is_zero() || (!tot.is_zero() && layer_abs.ln_abs < tol.ln() + tot.ln_abs);
            quiet = if small { quiet + 1 } else { 0 };
            if quiet >= 3 {
                converged = true;
                break;
            }
        }
    }
    let condition = total.condition();
    if condition > CONDITION_LIMIT {
        return Err(Error::Cancellation { condition, limit: CONDITION_LIMIT });
    }
    let v = total.value();
    Ok(SeriesResult {
        value: v.to_f64(),
        ln_abs: v.ln_abs,
        sign: v.sign,
        max_weight_used: used,
        tail_estimate: if terminating.is_some() { 0.0 } else { last_layer },
        terminated_exactly: terminating.is_some(),
        term_count: total.count(),
        condition,
        converged,
    })
}

/// Source of `C_κ(x̂)` values (signed log form), one weight layer at a time.
trait JackLayer: Send {
    fn layer(&mut self, k: u32) -> Result<Arc<[(Partition, LogValue)]>>;
}

struct IdentityLayer {
    alpha: Alpha,
    m: usize,
    sign: f64,
}

impl JackLayer for IdentityLayer {
    fn layer(&mut self, k: u32) -> Result<Arc<[(Partition, LogValue)]>> {
        let sign = if k % 2 == 1 { self.sign } else { 1.0 };
        Ok(partitions_of_weight(k, self.m)
            .iter()
            .map(|kap| {
                let v = ln_jack_c_at_identity(kap, self.alpha, self.m)
                    .map_or(LogValue::ZERO, |ln| LogValue { sign, ln_abs: ln });
                (kap.clone(), v)
            })
            .collect())
    }
}

struct MonomialLayer {
    alpha: Alpha,
    x: Vec<f64>,
}

impl JackLayer for MonomialLayer {
    fn layer(&mut self, k: u32) -> Result<Arc<[(Partition, LogValue)]>> {
        let n = self.x.len();
        let parts = partitions_of_weight(k, n);
        let monos: HashMap<Partition, f64> = parts.iter().map(|mu| (mu.clone(), monomial_eval(mu, &self.x))).collect();
        parts
            .iter()
            .map(|kap| {
                let e = jack_expansion(kap, self.alpha, n)?;
                let v: f64 = e.coefficients.iter().map(|(mu, c)| c * monos[mu]).sum();
                Ok((kap.clone(), LogValue::from_f64(v)))
            })
            .collect()
    }
}

/// Per-partition column sums of log hook lengths.
#[derive(Debug)]
struct ColumnData {
    /// `Σ ln(upper hook)` over all cells.
    upper: f64,
    /// `prefix[j] = Σ_{col ≤ j} (L_col - U_col)`, `prefix[0] = 0`.
    prefix: Vec<f64>,
    /// `|κ| ln α + ln |κ|! - ln(hook_norm)`: converts `J_κ` to `C_κ`.
    to_c: f64,
}

impl ColumnData {
    fn new(kappa: &Partition, alpha: f64) -> Self {
        let conj = kappa.conjugate();
        let cols = kappa.part(0) as usize;
        let mut prefix = vec![0.0; cols + 1];
        let (mut lower, mut upper) = (0.0, 0.0);
        for j in 1..=cols {
            let height = conj.part(j - 1) as usize;
            let (mut l, mut u) = (0.0, 0.0);
            for i in 1..=height {
                let leg = (height - i) as f64;
                let arm = (kappa.part(i - 1) as usize - j) as f64;
                l += (leg + 1.0 + alpha * arm).ln();
                u += (leg + alpha * (arm + 1.0)).ln();
            }
            lower += l;
            upper += u;
            prefix[j] = prefix[j - 1] + (l - u);
        }
        let k = kappa.weight() as usize;
        let to_c = k as f64 * alpha.ln() + ln_factorial(k) - lower - upper;
        ColumnData { upper, prefix, to_c }
    }

    /// `Σ_{lo < col ≤ hi} (L - U)`, clipped to the diagram.
    fn diff(&self, lo: usize, hi: usize) -> f64 {
        let last = self.prefix.len() - 1;
        let (lo, hi) = (lo.min(last), hi.min(last));
        self.prefix[hi] - self.prefix[lo]
    }
}

/// `C_κ(x_1..x_n)` for all `κ` layer by layer, via
/// `J_κ(x_1..x_l) = Σ_μ J_μ(x_1..x_{l-1}) x_l^{|κ/μ|} β_{κμ}` over horizontal
/// strips `κ/μ`, carried out directly in the `C` normalization.
struct BranchingEvaluator {
    x: Vec<f64>,
    alpha: f64,
    /// `tables[l]`: values with the first `l` variables.
    tables: Vec<HashMap<Partition, LogValue>>,
    columns: HashMap<Partition, Arc<ColumnData>>,
}

impl BranchingEvaluator {
    fn new(x: Vec<f64>, alpha: Alpha) -> Self {
        let n = x.len();
        let mut tables = vec![HashMap::new(); n + 1];
        tables[0].insert(Partition::empty(), LogValue::ONE);
        BranchingEvaluator { x, alpha: alpha.value(), tables, columns: HashMap::new() }
    }

    fn column_data(&mut self, kappa: &Partition) -> Arc<ColumnData> {
        let alpha = self.alpha;
        self.columns.entry(kappa.clone()).or_insert_with(|| Arc::new(ColumnData::new(kappa, alpha))).clone()
    }

    fn branch(&self, l: usize, kappa: &Partition, kd: &ColumnData) -> LogValue {
        let prev = &self.tables[l - 1];
        let xl = self.x[l - 1];
        let k = kappa.weight();
        let mut acc = LogSum::new();
        // μ_i ∈ [κ_{i+1}, κ_i] for i < l, μ_l = 0
        let mut mu = vec![0u32; l - 1];
        let ranges: Vec<(u32, u32)> = (0..l - 1).map(|i| (kappa.part(i + 1), kappa.part(i))).collect();
        for (i, r) in ranges.iter().enumerate() {
            mu[i] = r.0;
        }
        loop {
            let mu_p = Partition::new(mu.clone());
            if let Some(&cmu) = prev.get(&mu_p) {
                if !cmu.is_zero() {
                    let md = self.columns.get(&mu_p).expect("column data for lower partition");
                    let mut s_k = 0.0;
                    let mut s_mu = 0.0;
                    for i in 0..l {
                        let lo = mu.get(i).copied().unwrap_or(0) as usize;
                        let hi = kappa.part(i) as usize;
                        if hi > lo {
                            s_k += kd.diff(lo, hi);
                            s_mu += md.diff(lo, hi);
                        }
                    }
                    let ln_beta = (kd.upper + s_k) - (md.upper + s_mu);
                    let d = k - mu_p.weight();
                    let xpow = LogValue::from_f64(xl).powi(d as i32);
                    let f = LogValue { sign: 1.0, ln_abs: ln_beta + kd.to_c - md.to_c };
                    acc.add(cmu * xpow * f);
                }
            }
            // odometer over the ranges
            let mut i = 0;
            loop {
                if i == mu.len() {
                    return acc.value();
                }
                if mu[i] < ranges[i].1 {
                    mu[i] += 1;
                    break;
                }
                mu[i] = ranges[i].0;
                i += 1;
            }
        }
    }
}

impl JackLayer for BranchingEvaluator {
    fn layer(&mut self, k: u32) -> Result<Arc<[(Partition, LogValue)]>> {
        let n = self.x.len();
        if k as usize > crate::jack::max_weight() {
            return Err(Error::Resource(format!(
                "partition weight {k} exceeds configured maximum {}",
                crate::jack::max_weight()
            )));
        }
        for l in 1..=n {
            let parts = partitions_of_weight(k, l);
            let data: Vec<Arc<ColumnData>> = parts.iter().map(|p| self.column_data(p)).collect();
            let this = &*self;
            let vals: Vec<LogValue> =
                parts.par_iter().zip(data.par_iter()).map(|(kap, kd)| this.branch(l, kap, kd)).collect();
            for (kap, v) in parts.iter().zip(vals) {
                self.tables[l].insert(kap.clone(), v);
            }
        }
        let top = &self.tables[n];
        Ok(partitions_of_weight(k, n).iter().map(|p| (p.clone(), top[p])).collect())
    }
}

/// Result of comparing `ₚFq(…, a_p; …; x/a_p)` with `ₚ₋₁Fq(…; …; x)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConfluenceReport {
    pub with_extra: f64,
    pub without: f64,
    pub relative_difference: f64,
}

pub fn confluence_check(
    upper: &[f64],
    lower: &[f64],
    alpha: Alpha,
    x: &ArgBlocks,
    a_p: f64,
    tol: f64,
    max_weight: usize,
) -> Result<ConfluenceReport> {
    let mut up = upper.to_vec();
    up.push(a_p);
    let big = HypergeomSpec { upper: up, lower: lower.to_vec(), alpha, args: x.scaled(1.0 / a_p) };
    let small = HypergeomSpec { upper: upper.to_vec(), lower: lower.to_vec(), alpha, args: x.clone() };
    let w = pfq_alpha(&big, tol, max_weight)?.value;
    let wo = pfq_alpha(&small, tol, max_weight)?.value;
    Ok(ConfluenceReport { with_extra: w, without: wo, relative_difference: ((w - wo) / wo).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jack::jack_c_eval;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn alpha(a: f64) -> Alpha {
        Alpha::new(a).unwrap()
    }

    #[test]
    fn branching_matches_monomial_route() {
        for &al in &[0.5, 1.0, 2.0, 3.7] {
            let x = vec![0.3, -0.7, 1.0];
            let mut ev = BranchingEvaluator::new(x.clone(), alpha(al));
            for k in 0..=7u32 {
                let layer = ev.layer(k).unwrap();
                for (kap, v) in layer.iter() {
                    let direct = jack_c_eval(kap, alpha(al), &x).unwrap();
                    assert!(
                        (v.to_f64() - direct).abs() <= 1e-12 * direct.abs().max(1e-3),
                        "κ={kap} α={al}: {} vs {direct}",
                        v.to_f64()
                    );
                }
            }
        }
    }

    #[test]
    fn scalar_bessel_series() {
        // ₀F₁(;2;1) = Σ 1/((2)_k k!)
        let direct: f64 =
            (0..30).map(|k| 1.0 / (crate::special::rising(2.0, k) * crate::special::gamma(k as f64 + 1.0))).sum();
        let r = f01_repeated(2.0, 1.0, 1, alpha(1.0), 1e-16, 200).unwrap();
        assert_relative_eq!(r.value, direct, max_relative = 1e-14);
        assert_relative_eq!(r.value, 1.590_636_854_637_329, max_relative = 1e-12);
        let i0: f64 = (0..30).map(|k| 1.0 / crate::special::gamma(k as f64 + 1.0).powi(2)).sum();
        let r = f01_repeated(1.0, 1.0, 1, alpha(1.0), 1e-16, 200).unwrap();
        assert_relative_eq!(r.value, i0, max_relative = 1e-14);
        assert_relative_eq!(i0, 2.279_585_302_336_067, max_relative = 1e-14);
    }

    #[test]
    fn trivial_cases() {
        let r = f01_repeated(0.3, 0.0, 4, alpha(2.0), 1e-14, 50).unwrap();
        assert_eq!(r.value, 1.0);
        let spec = HypergeomSpec {
            upper: vec![0.0],
            lower: vec![1.5],
            alpha: alpha(0.7),
            args: ArgBlocks::single(-3.0, 2).unwrap(),
        };
        let r = pfq_alpha(&spec, 1e-14, 50).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.terminated_exactly);
        assert_eq!(r.tail_estimate, 0.0);
    }

    #[test]
    fn identity_route_equals_general_route() {
        // (β, a) = (2, 2): c = a = 2, m = βa/2 = 2, α = β/2 = 1
        let spec = HypergeomSpec {
            upper: vec![],
            lower: vec![2.0],
            alpha: alpha(1.0),
            args: ArgBlocks::single(1.0, 2).unwrap(),
        };
        let fast = pfq_alpha_with(&spec, 1e-16, 200, JackRoute::Identity).unwrap();
        let general = pfq_alpha_with(&spec, 1e-16, 200, JackRoute::Branching).unwrap();
        let mono = pfq_alpha_with(&spec, 1e-16, 60, JackRoute::Monomial).unwrap();
        assert_relative_eq!(fast.value, general.value, max_relative = 1e-12);
        assert_relative_eq!(fast.value, mono.value, max_relative = 1e-12);
        for &(c, t, m, al) in &[(1.5, 2.5, 3, 0.5), (4.0, 1.2, 2, 2.0), (3.0, -0.8, 3, 1.5)] {
            let fast = f01_repeated(c, t, m, alpha(al), 1e-16, 200).unwrap();
            let spec = HypergeomSpec {
                upper: vec![],
                lower: vec![c],
                alpha: alpha(al),
                args: ArgBlocks::single(t, m).unwrap(),
            };
            let general = pfq_alpha_with(&spec, 1e-16, 200, JackRoute::Branching).unwrap();
            assert_relative_eq!(fast.value, general.value, max_relative = 1e-12);
        }
    }

    #[test]
    fn lower_pole_is_reported() {
        let spec = HypergeomSpec {
            upper: vec![],
            lower: vec![-1.0],
            alpha: alpha(1.0),
            args: ArgBlocks::single(0.5, 1).unwrap(),
        };
        assert!(matches!(pfq_alpha(&spec, 1e-14, 40), Err(Error::LowerParameterPole { .. })));
    }

    #[test]
    fn terminating_series_is_exact_polynomial() {
        // one variable: ₁F₁(-N; b; x) is a Laguerre-type polynomial
        let (n, b, x) = (4usize, 2.5, -1.3f64);
        let direct: f64 = (0..=n)
            .map(|k| {
                crate::special::rising(-(n as f64), k) / crate::special::rising(b, k) * x.powi(k as i32)
                    / crate::special::gamma(k as f64 + 1.0)
            })
            .sum();
        let spec = HypergeomSpec {
            upper: vec![-(n as f64)],
            lower: vec![b],
            alpha: alpha(0.9),
            args: ArgBlocks::single(x, 1).unwrap(),
        };
        let r = pfq_alpha(&spec, 1e-14, 100).unwrap();
        assert!(r.terminated_exactly);
        assert_eq!(r.max_weight_used, n);
        assert_relative_eq!(r.value, direct, max_relative = 1e-13);
    }

    #[test]
    fn confluence_shrinks() {
        let x = ArgBlocks::single(1.0, 1).unwrap();
        let zero = ArgBlocks::single(0.0, 1).unwrap();
        let z = confluence_check(&[], &[2.0], alpha(1.0), &zero, 100.0, 1e-15, 200).unwrap();
        assert_eq!((z.with_extra, z.without), (1.0, 1.0));
        let r = confluence_check(&[], &[2.0], alpha(1.0), &x, 1e4, 1e-15, 200).unwrap();
        assert!(r.relative_difference < 1e-3);
        let x2 = ArgBlocks::new(vec![(0.8, 1), (1.3, 1)]).unwrap();
        let mut prev = f64::INFINITY;
        for ap in [1e2, 1e3, 1e4] {
            let r = confluence_check(&[], &[3.0], alpha(1.0), &x2, ap, 1e-15, 200).unwrap();
            assert!(r.relative_difference < prev);
            prev = r.relative_difference;
        }
    }

    #[test]
    fn cancellation_guard() {
        // ₁F₁(-N; b; -x) with large positive-argument alternation
        let spec = HypergeomSpec {
            upper: vec![-60.0],
            lower: vec![1.0],
            alpha: alpha(1.0),
            args: ArgBlocks::single(40.0, 1).unwrap(),
        };
        assert!(matches!(pfq_alpha(&spec, 1e-14, 200), Err(Error::Cancellation { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn block_order_invariance(
            vals in prop::collection::vec((0.05f64..1.5, 1usize..3), 2..=3),
            c in 1.0f64..4.0,
        ) {
            let a = alpha(1.3);
            let fwd = HypergeomSpec { upper: vec![], lower: vec![c], alpha: a, args: ArgBlocks::new(vals.clone()).unwrap() };
            let mut rev_vals = vals.clone();
            rev_vals.reverse();
            let rev = HypergeomSpec { upper: vec![], lower: vec![c], alpha: a, args: ArgBlocks::new(rev_vals).unwrap() };
            let r1 = pfq_alpha(&fwd, 1e-14, 120).unwrap();
            let r2 = pfq_alpha(&rev, 1e-14, 120).unwrap();
            prop_assert_eq!(r1.value.to_bits(), r2.value.to_bits());
        }

        #[test]
        fn positive_series_layers_are_monotone(t in 0.0f64..3.0, m in 1usize..4, c in 0.1f64..3.0) {
            let a = alpha(0.8);
            // every [c]_κ is positive once c > (m-1)/α
            let c = c + (m as f64 - 1.0) / 0.8;
            let mut prev = 0.0;
            for w in 0..25 {
                let r = f01_repeated(c, t, m, a, 1e-300, w).unwrap();
                prop_assert!(r.value >= prev);
                prev = r.value;
            }
        }
    }
}
