//! Integer partitions and the partition-indexed scalars used by every series
//! term: generalized Pochhammer symbols, hook products and the value of
//! `C_κ` at the all-ones vector.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::logspace::LogValue;
use crate::{Error, Result};

/// Weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from arbitrary nonnegative parts (sorted, zeros dropped).
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Cells `(i, j)`, both 0-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    /// `true` when the diagram of `self` lies inside that of `other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The Jack parameter.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::Domain(format!("Jack parameter must be positive, got {value}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

type PartitionKey = (u32, usize);

fn cache() -> &'static RwLock<HashMap<PartitionKey, Arc<[Partition]>>> {
    static CACHE: OnceLock<RwLock<HashMap<PartitionKey, Arc<[Partition]>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All partitions of `k` with at most `max_parts` parts, in reverse
/// lexicographic order (`(3), (2,1), (1,1,1)`). Results are cached.
pub fn partitions_of_weight(k: u32, max_parts: usize) -> Arc<[Partition]> {
    let max_parts = max_parts.min(k as usize).max(if k == 0 { 0 } else { 1 });
    let key = (k, max_parts);
    if let Some(hit) = cache().read().expect("partition cache poisoned").get(&key) {
        return hit.clone();
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    enumerate(k, k, max_parts, &mut current, &mut out);
    let arc: Arc<[Partition]> = out.into();
    cache().write().expect("partition cache poisoned").entry(key).or_insert(arc).clone()
}

fn enumerate(remaining: u32, cap: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    // the remaining parts must fit: cap * slots >= remaining
    for p in (1..=cap.min(remaining)).rev() {
        if (p as u64) * (slots as u64) < remaining as u64 {
            break;
        }
        current.push(p);
        enumerate(remaining - p, p, slots - 1, current, out);
        current.pop();
    }
}

pub fn conjugate(kappa: &Partition) -> Partition {
    kappa.conjugate()
}

/// `[a]_κ = ∏_j (a - (j-1)/α)_{κ_j}` as a straight product.
pub fn gen_pochhammer(a: f64, kappa: &Partition, alpha: Alpha) -> f64 {
    let mut acc = 1.0;
    for (j, &p) in kappa.parts().iter().enumerate() {
        let base = a - j as f64 / alpha.0;
        for i in 0..p {
            acc *= base + i as f64;
        }
    }
    acc
}

/// [`gen_pochhammer`] in signed-log form, exact zero preserved.
pub fn gen_pochhammer_log(a: f64, kappa: &Partition, alpha: Alpha) -> LogValue {
    let mut sign = 1.0;
    let mut ln = 0.0;
    for (j, &p) in kappa.parts().iter().enumerate() {
        let base = a - j as f64 / alpha.0;
        for i in 0..p {
            let f = base + i as f64;
            if f == 0.0 {
                return LogValue::ZERO;
            }
            if f < 0.0 {
                sign = -sign;
            }
            ln += f.abs().ln();
        }
    }
    LogValue { sign, ln_abs: ln }
}

/// Product over cells of lower hook × upper hook.
pub fn hook_norm(kappa: &Partition, alpha: Alpha) -> f64 {
    let (lower, upper) = hooks_ln(kappa, alpha);
    (lower + upper).exp()
}

/// `(Σ ln lower-hook, Σ ln upper-hook)`.
pub(crate) fn hooks_ln(kappa: &Partition, alpha: Alpha) -> (f64, f64) {
    let conj = kappa.conjugate();
    let mut lower = 0.0;
    let mut upper = 0.0;
    for (i, j) in kappa.cells() {
        let leg = conj.part(j) as f64 - i as f64 - 1.0;
        let arm = kappa.part(i) as f64 - j as f64 - 1.0;
        lower += (leg + 1.0 + alpha.0 * arm).ln();
        upper += (leg + alpha.0 * (arm + 1.0)).ln();
    }
    (lower, upper)
}

/// `ln C_κ(1^m)`; `None` when `κ` has more than `m` parts (value 0).
pub fn ln_jack_c_at_identity(kappa: &Partition, alpha: Alpha, m: usize) -> Option<f64> {
    if kappa.len() > m {
        return None;
    }
    let k = kappa.weight() as usize;
    let a = alpha.0;
    let mut ln = k as f64 * a.ln() + crate::special::ln_factorial(k);
    for (i, j) in kappa.cells() {
        ln += (m as f64 - i as f64 + a * j as f64).ln();
    }
    let (lower, upper) = hooks_ln(kappa, alpha);
    Some(ln - lower - upper)
}

/// `C_κ^{(α)}(1, …, 1)` with `m` ones.
pub fn jack_c_at_identity(kappa: &Partition, alpha: Alpha, m: usize) -> f64 {
    ln_jack_c_at_identity(kappa, alpha, m).map_or(0.0, f64::exp)
}
