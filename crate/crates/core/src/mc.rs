//! Monte Carlo sampling of the Laguerre β-ensemble through bidiagonal chi
//! models.
//!
//! With `B` bidiagonal, diagonal entries `χ_{β(a+N-i)+2}` and off-diagonal
//! entries `χ_{β(N-i)}` (`i = 1..N`), the eigenvalues of `BBᵀ/β` have density
//! proportional to `∏ λ^{βa/2} e^{-βλ/2} ∏|λ_k - λ_j|^β`.
//!
//! Eigenvalue counts are taken from the Golub-Kahan form of `B` (zero
//! diagonal, off-diagonal `d₁, e₁, d₂, …, d_N`), whose Sturm recurrence keeps
//! relative accuracy for the tiny singular values that sit at the hard edge.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples per RNG stream. Fixed so that results do not depend on the
/// number of worker threads.
pub const CHUNK: usize = 2048;

pub const MIN_SAMPLES: usize = 1000;

/// Eigenvalues below this multiple of the trace are counted as zero.
pub const ZERO_FRACTION: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub beta: f64,
    pub a: f64,
    pub big_n: usize,
}

impl EnsembleSpec {
    pub fn new(beta: f64, a: f64, big_n: usize) -> Result<Self> {
        let spec = EnsembleSpec { beta, a, big_n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::Domain(format!("beta = {} must be positive", self.beta)));
        }
        if !(self.a >= 0.0 && self.a.is_finite()) {
            return Err(Error::Domain(format!("a = {} must be nonnegative", self.a)));
        }
        if self.big_n == 0 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        Ok(())
    }

    /// Chi degrees of freedom `(diagonal, off-diagonal)`.
    pub fn chi_degrees(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.big_n;
        let diag = (1..=n).map(|i| self.beta * (self.a + (n - i) as f64) + 2.0).collect();
        let off = (1..n).map(|i| self.beta * (n - i) as f64).collect();
        (diag, off)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub probability: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl McEstimate {
    fn from_hits(hits: usize, samples: usize, seed: u64) -> Self {
        let p = hits as f64 / samples as f64;
        McEstimate { probability: p, stderr: (p * (1.0 - p) / samples as f64).sqrt(), samples, seed }
    }
}

/// Upper bidiagonal factor: `diag` has length N, `off` has length N-1.
#[derive(Debug, Clone, PartialEq)]
pub struct Bidiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Bidiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidArgument(format!(
                "bidiagonal needs n diagonal and n-1 off-diagonal entries, got {} and {}",
                diag.len(),
                off.len()
            )));
        }
        Ok(Bidiagonal { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Trace of `BBᵀ`.
    pub fn trace(&self) -> f64 {
        self.diag.iter().chain(self.off.iter()).map(|v| v * v).sum()
    }

    /// Number of eigenvalues of `BBᵀ` strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        if x <= 0.0 {
            return 0;
        }
        let sigma = x.sqrt();
        let n = self.diag.len();
        let max_sq = self.diag.iter().chain(self.off.iter()).fold(0.0f64, |m, v| m.max(v * v));
        let pivmin = f64::MIN_POSITIVE * max_sq.max(1.0);
        let mut neg = 0usize;
        let mut q = -sigma;
        if q < 0.0 {
            neg += 1;
        }
        for k in 1..2 * n {
            let b = if k % 2 == 1 { self.diag[k / 2] } else { self.off[k / 2 - 1] };
            let prev = if q.abs() < pivmin { -pivmin } else { q };
            q = -sigma - b * b / prev;
            if q < 0.0 {
                neg += 1;
            }
        }
        // eigenvalues of the Golub-Kahan matrix come in pairs ±σ_j
        neg.saturating_sub(n)
    }

    /// Gershgorin-type upper bound for the eigenvalues of `BBᵀ`.
    fn upper_bound(&self) -> f64 {
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let d = self.diag[i].abs();
                let e = if i + 1 < n { self.off[i].abs() } else { 0.0 };
                let ep = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let dp = if i > 0 { self.diag[i - 1].abs() } else { 0.0 };
                let dn = if i + 1 < n { self.diag[i + 1].abs() } else { 0.0 };
                d * d + ep * ep + d * e + dp * ep + e * dn
            })
            .fold(0.0f64, f64::max)
            * (1.0 + 1e-12)
            + f64::MIN_POSITIVE
    }
}

const BISECTION_RTOL: f64 = 1e-12;

/// The `k` smallest eigenvalues of `BBᵀ`, ascending, by bisection on the
/// Sturm count.
pub fn smallest_eigenvalues(b: &Bidiagonal, k: usize) -> Result<Vec<f64>> {
    if k > b.len() {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds matrix size {}", b.len())));
    }
    let hi0 = b.upper_bound();
    let mut out = Vec::with_capacity(k);
    let mut lo0 = 0.0;
    for j in 0..k {
        // smallest x with count(x) > j
        let (mut lo, mut hi) = (lo0, hi0);
        for _ in 0..2000 {
            if hi - lo <= BISECTION_RTOL * hi {
                break;
            }
            // geometric midpoint while the bracket spans many decades
            let mid = if lo == 0.0 {
                hi / 16.0
            } else if hi / lo > 4.0 {
                (lo * hi).sqrt()
            } else {
                0.5 * (lo + hi)
            };
            if mid <= lo || mid >= hi {
                break;
            }
            if b.sturm_count(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let v = 0.5 * (lo + hi);
        out.push(v);
        lo0 = lo;
    }
    Ok(out)
}

struct ChiSampler {
    diag: Vec<Gamma<f64>>,
    off: Vec<Gamma<f64>>,
}

impl ChiSampler {
    fn new(spec: &EnsembleSpec) -> Result<Self> {
        let (dd, od) = spec.chi_degrees();
        let mk = |k: f64| Gamma::new(0.5 * k, 1.0).map_err(|e| Error::Domain(format!("chi degrees {k}: {e}")));
        Ok(ChiSampler {
            diag: dd.into_iter().map(mk).collect::<Result<_>>()?,
            off: od.into_iter().map(mk).collect::<Result<_>>()?,
        })
    }

    fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, b: &mut Bidiagonal) {
        for (v, g) in b.diag.iter_mut().zip(&self.diag) {
            *v = (2.0 * g.sample(rng)).sqrt();
        }
        for (v, g) in b.off.iter_mut().zip(&self.off) {
            *v = (2.0 * g.sample(rng)).sqrt();
        }
    }
}

/// One draw of the bidiagonal factor; eigenvalues of the ensemble are those
/// of `BBᵀ/β`.
pub fn sample_bidiagonal<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<Bidiagonal> {
    spec.validate()?;
    let sampler = ChiSampler::new(spec)?;
    let n = spec.big_n;
    let mut b = Bidiagonal { diag: vec![0.0; n], off: vec![0.0; n - 1] };
    sampler.sample_into(rng, &mut b);
    Ok(b)
}

/// All N eigenvalues of one sample, ascending.
pub fn sample_spectrum<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<Vec<f64>> {
    let b = sample_bidiagonal(spec, rng)?;
    let ev = smallest_eigenvalues(&b, spec.big_n)?;
    Ok(ev.into_iter().map(|v| v / spec.beta).collect())
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

/// Applies `f` to `samples` independent bidiagonal draws and sums the
/// results. Chunk `c` uses stream `c` of a ChaCha8 generator seeded with
/// `seed`, so the sum is independent of the thread count.
fn map_reduce_samples<F>(spec: &EnsembleSpec, samples: usize, seed: u64, f: F) -> Result<usize>
where
    F: Fn(&Bidiagonal) -> usize + Sync,
{
    spec.validate()?;
    let sampler = ChiSampler::new(spec)?;
    let n = spec.big_n;
    let chunks = samples.div_ceil(CHUNK);
    let total = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let mut b = Bidiagonal { diag: vec![0.0; n], off: vec![0.0; n - 1] };
            let count = CHUNK.min(samples - c * CHUNK);
            let mut acc = 0usize;
            for _ in 0..count {
                sampler.sample_into(&mut rng, &mut b);
                acc += f(&b);
            }
            acc
        })
        .sum();
    Ok(total)
}

/// Number of eigenvalues of `BBᵀ/β` in `(ZERO_FRACTION·trace, x)`.
fn count_below(b: &Bidiagonal, beta: f64, x: f64) -> usize {
    let thr = ZERO_FRACTION * b.trace();
    let upper = b.sturm_count(beta * x);
    if thr >= beta * x {
        return 0;
    }
    upper - b.sturm_count(thr)
}

/// Fraction of samples with exactly `n` eigenvalues in `(0, x)`, finite-N
/// variable.
pub fn estimate_gap_finite_n(spec: &EnsembleSpec, x: f64, n: usize, samples: usize, seed: u64) -> Result<McEstimate> {
    check_samples(samples)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("interval endpoint {x} must be nonnegative")));
    }
    let beta = spec.beta;
    let hits = map_reduce_samples(spec, samples, seed, |b| (count_below(b, beta, x) == n) as usize)?;
    Ok(McEstimate::from_hits(hits, samples, seed))
}

/// Fraction of samples with exactly `n` eigenvalues in `(0, s/(4N))`.
pub fn estimate_gap(spec: &EnsembleSpec, s: f64, n: usize, samples: usize, seed: u64) -> Result<McEstimate> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("s = {s} must be nonnegative")));
    }
    estimate_gap_finite_n(spec, s / (4.0 * spec.big_n as f64), n, samples, seed)
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!("at least {MIN_SAMPLES} samples required, got {samples}")));
    }
    Ok(())
}

/// Smallest eigenvalue of each of `samples` draws, in sample order.
pub fn sample_smallest(spec: &EnsembleSpec, samples: usize, seed: u64) -> Result<Vec<f64>> {
    spec.validate()?;
    let sampler = ChiSampler::new(spec)?;
    let n = spec.big_n;
    let chunks = samples.div_ceil(CHUNK);
    let per: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let mut b = Bidiagonal { diag: vec![0.0; n], off: vec![0.0; n - 1] };
            let count = CHUNK.min(samples - c * CHUNK);
            (0..count)
                .map(|_| {
                    sampler.sample_into(&mut rng, &mut b);
                    smallest_eigenvalues(&b, 1).map(|v| v[0] / spec.beta).unwrap_or(f64::NAN)
                })
                .collect()
        })
        .collect();
    Ok(per.into_iter().flatten().collect())
}

/// Kolmogorov-Smirnov statistic of `data` against the continuous CDF `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> f64 {
    let mut v = data.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.627_6 / (n as f64).sqrt()
}
