//! Scalar special functions that are not covered by `statrs`.

pub use statrs::function::gamma::{gamma, ln_gamma};

/// Euler–Mascheroni constant.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

pub const LN_2PI: f64 = 1.837_877_066_409_345_5;

const BERNOULLI_EVEN: [(f64, f64); 18] = [
    (1.0, 1.0),
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
    (-7709321041217.0, 510.0),
    (2577687858367.0, 6.0),
];

pub const MAX_BERNOULLI: usize = 2 * (BERNOULLI_EVEN.len() - 1);

/// Bernoulli number `B_n` (with `B_1 = -1/2`), `n ≤ MAX_BERNOULLI`.
pub fn bernoulli(n: usize) -> f64 {
    assert!(n <= MAX_BERNOULLI, "bernoulli({n}) outside table");
    match n {
        1 => -0.5,
        n if n % 2 == 1 => 0.0,
        n => {
            let (p, q) = BERNOULLI_EVEN[n / 2];
            p / q
        }
    }
}

/// Bernoulli polynomial `B_n(x)`.
pub fn bernoulli_poly(n: usize, x: f64) -> f64 {
    // Horner-like accumulation of Σ C(n,j) B_j x^{n-j}
    let mut binom = 1.0;
    let mut acc = 0.0;
    let mut terms = Vec::with_capacity(n + 1);
    for j in 0..=n {
        terms.push(binom * bernoulli(j));
        binom = binom * (n - j) as f64 / (j + 1) as f64;
    }
    for (j, c) in terms.iter().enumerate() {
        acc += c * x.powi((n - j) as i32);
    }
    acc
}

/// Hurwitz zeta `ζ(k, q) = Σ_{n≥0} (q+n)^{-k}` for integer `k ≥ 2`, `q > 0`.
pub fn hurwitz_zeta(k: u32, q: f64) -> f64 {
    assert!(k >= 2 && q > 0.0);
    let kf = k as f64;
    let shift = if q < 24.0 { (24.0 - q).ceil() as usize } else { 0 };
    let mut head = 0.0;
    for n in (0..shift).rev() {
        head += (q + n as f64).powf(-kf);
    }
    let big_q = q + shift as f64;
    let mut tail = big_q.powf(1.0 - kf) / (kf - 1.0) + 0.5 * big_q.powf(-kf);
    // rising factor k(k+1)…(k+2j-2) / (2j)!
    let mut ratio = kf / 2.0;
    let mut qpow = big_q.powf(-kf - 1.0);
    for j in 1..=(MAX_BERNOULLI / 2) {
        let term = bernoulli(2 * j) * ratio * qpow;
        tail += term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
        let j2 = 2.0 * j as f64;
        ratio *= (kf + j2 - 1.0) * (kf + j2) / ((j2 + 1.0) * (j2 + 2.0));
        qpow /= big_q * big_q;
    }
    head + tail
}

/// `log Γ(x)` for `x > 0`, `ln n!` for integral arguments.
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Rising factorial `(x)_k` as a straight product.
pub fn rising(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x + i as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bernoulli_polynomial_values() {
        assert_relative_eq!(bernoulli_poly(2, 0.3), 0.09 - 0.3 + 1.0 / 6.0, epsilon = 1e-15);
        // B_n(1) = B_n for n ≥ 2
        for n in 2..20 {
            assert_relative_eq!(bernoulli_poly(n, 1.0), bernoulli(n), epsilon = 1e-9, max_relative = 1e-12);
        }
        // B_n(x+1) - B_n(x) = n x^{n-1}
        let x = 1.37;
        for n in 1..16 {
            let d = bernoulli_poly(n, x + 1.0) - bernoulli_poly(n, x);
            assert_relative_eq!(d, n as f64 * x.powi(n as i32 - 1), max_relative = 1e-10);
        }
    }

    #[test]
    fn hurwitz_matches_direct_sums() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert_relative_eq!(hurwitz_zeta(2, 1.0), z2, max_relative = 1e-14);
        assert_relative_eq!(hurwitz_zeta(2, 3.0), z2 - 1.0 - 0.25, max_relative = 1e-14);
        let z4 = std::f64::consts::PI.powi(4) / 90.0;
        assert_relative_eq!(hurwitz_zeta(4, 1.0), z4, max_relative = 1e-14);
        let direct: f64 = (0..200_000).map(|n| (40.5 + n as f64).powi(-7)).sum();
        assert_relative_eq!(hurwitz_zeta(7, 40.5), direct, max_relative = 1e-12);
    }
}
