//! Jack polynomials `C_κ^{(α)}` in the monomial basis.
//!
//! `P_κ` is obtained from the triangular system produced by the
//! Laplace–Beltrami eigenoperator: for `μ < κ` in dominance order,
//!
//! `(e_κ - e_μ) c_μ = Σ (μ_i - μ_j + 2t) c_ν`,
//!
//! the sum running over `ν = μ + t(ε_i - ε_j)` (re-sorted) with `i < j`,
//! `1 ≤ t ≤ μ_j`, and `e_λ = (α/2)Σλ_i² - Σ i λ_i`. Restricting `μ` to at most
//! `m` parts is closed under this recurrence, so expansions can be truncated
//! to the number of variables in use.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::partitions::{hooks_ln, partitions_of_weight, Alpha, Partition};
use crate::special::ln_factorial;
use crate::{Error, Result};

pub const DEFAULT_MAX_WEIGHT: usize = 200;

static MAX_WEIGHT: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_WEIGHT);

/// Largest `|κ|` for which expansions will be built.
pub fn max_weight() -> usize {
    MAX_WEIGHT.load(Ordering::Relaxed)
}

pub fn set_max_weight(w: usize) {
    MAX_WEIGHT.store(w, Ordering::Relaxed);
}

/// `C_κ = Σ_μ coefficient(μ) m_μ`, restricted to `μ` with at most
/// `max_parts` parts.
#[derive(Debug, Clone)]
pub struct MonomialExpansion {
    pub kappa: Partition,
    pub alpha: Alpha,
    pub max_parts: usize,
    /// Reverse lexicographic order, starting with `κ` itself.
    pub coefficients: Vec<(Partition, f64)>,
}

impl MonomialExpansion {
    pub fn coefficient(&self, mu: &Partition) -> f64 {
        self.coefficients.iter().find(|(p, _)| p == mu).map_or(0.0, |(_, c)| *c)
    }
}

type Key = (Partition, u64, usize);

fn cache() -> &'static RwLock<HashMap<Key, Arc<MonomialExpansion>>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, Arc<MonomialExpansion>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Full expansion of `C_κ` (all `μ ≤ κ`).
pub fn jack_in_monomial_basis(kappa: &Partition, alpha: Alpha) -> Result<Arc<MonomialExpansion>> {
    jack_expansion(kappa, alpha, kappa.weight() as usize)
}

/// Expansion truncated to monomials in at most `max_parts` variables; exact
/// for evaluation at vectors of that length.
pub fn jack_expansion(kappa: &Partition, alpha: Alpha, max_parts: usize) -> Result<Arc<MonomialExpansion>> {
    let k = kappa.weight() as usize;
    if k > max_weight() {
        return Err(Error::Resource(format!("partition weight {k} exceeds configured maximum {}", max_weight())));
    }
    let max_parts = max_parts.min(k).max(kappa.len());
    let key = (kappa.clone(), alpha.value().to_bits(), max_parts);
    if let Some(hit) = cache().read().expect("jack cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let built = Arc::new(build(kappa, alpha, max_parts));
    Ok(cache().write().expect("jack cache poisoned").entry(key).or_insert(built).clone())
}

fn energy(parts: &[u32], alpha: f64) -> f64 {
    let mut sq = 0.0;
    let mut lin = 0.0;
    for (i, &p) in parts.iter().enumerate() {
        let p = p as f64;
        sq += p * p;
        lin += (i + 1) as f64 * p;
    }
    0.5 * alpha * sq - lin
}

fn build(kappa: &Partition, alpha: Alpha, max_parts: usize) -> MonomialExpansion {
    let a = alpha.value();
    let k = kappa.weight();
    let all = partitions_of_weight(k, max_parts);
    let start = all.iter().position(|p| p == kappa).expect("κ fits in max_parts");
    let e_kappa = energy(kappa.parts(), a);

    let mut coeff: HashMap<Vec<u32>, f64> = HashMap::new();
    coeff.insert(kappa.parts().to_vec(), 1.0);
    let mut ordered = vec![(kappa.clone(), 1.0)];
    let mut nu = Vec::with_capacity(max_parts);

    for mu in all[start + 1..].iter() {
        let parts = mu.parts();
        let mut sum = 0.0;
        for j in 1..parts.len() {
            for i in 0..j {
                for t in 1..=parts[j] {
                    nu.clear();
                    nu.extend_from_slice(parts);
                    nu[i] += t;
                    nu[j] -= t;
                    nu.sort_unstable_by(|x, y| y.cmp(x));
                    while nu.last() == Some(&0) {
                        nu.pop();
                    }
                    if let Some(c) = coeff.get(nu.as_slice()) {
                        sum += (parts[i] as f64 - parts[j] as f64 + 2.0 * t as f64) * c;
                    }
                }
            }
        }
        if sum != 0.0 {
            let c = sum / (e_kappa - energy(parts, a));
            coeff.insert(parts.to_vec(), c);
            ordered.push((mu.clone(), c));
        }
    }

    // P → C: multiply by α^k k! / (upper hook product)
    let (_, upper) = hooks_ln(kappa, alpha);
    let scale = (k as f64 * a.ln() + ln_factorial(k as usize) - upper).exp();
    for (_, c) in ordered.iter_mut() {
        *c *= scale;
    }
    MonomialExpansion { kappa: kappa.clone(), alpha, max_parts, coefficients: ordered }
}

/// Monomial symmetric polynomial `m_μ(x)`.
pub fn monomial_eval(mu: &Partition, x: &[f64]) -> f64 {
    let n = x.len();
    if mu.len() > n {
        return 0.0;
    }
    // distinct permutations of the padded exponent vector, ascending start
    let mut exps: Vec<u32> = (0..n).map(|i| mu.part(i)).collect();
    exps.sort_unstable();
    let mut total = 0.0;
    loop {
        let mut term = 1.0;
        for (xi, &e) in x.iter().zip(&exps) {
            if e > 0 {
                term *= xi.powi(e as i32);
            }
        }
        total += term;
        if !next_permutation(&mut exps) {
            break;
        }
    }
    total
}

fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `C_κ^{(α)}(x)`.
pub fn jack_c_eval(kappa: &Partition, alpha: Alpha, x: &[f64]) -> Result<f64> {
    if kappa.len() > x.len() {
        return Ok(0.0);
    }
    let exp = jack_expansion(kappa, alpha, x.len())?;
    Ok(exp.coefficients.iter().map(|(mu, c)| c * monomial_eval(mu, x)).sum())
}
