//! Collision entropies and the read-length thresholds derived from them.
//! All logarithms are natural.

use crate::error::{Error, Result};
use crate::model::Distribution;

/// Second-order Rényi entropy, `-ln sum_a p(a)^2`.
pub fn renyi2_entropy(p: &Distribution) -> f64 {
    let collision: f64 = p.probs().iter().map(|x| x * x).sum();
    -collision.ln()
}

/// `F(p, q) = -ln sum_a p(a) q(a)`. Returns `f64::INFINITY` when the
/// supports are disjoint, so that `exp(-l * F)` evaluates to zero.
pub fn cross_entropy_f(p: &Distribution, q: &Distribution) -> Result<f64> {
    let inner = p.inner_product(q)?;
    Ok(if inner <= 0.0 {
        f64::INFINITY
    } else {
        -inner.ln()
    })
}

/// Read length above which reconstruction succeeds with high probability:
/// `2 (1 + eps) / h_star * ln(M N)`.
pub fn upper_threshold(m: usize, n: usize, h_star: f64, epsilon: f64) -> Result<f64> {
    check_counts(m, n)?;
    if !(h_star.is_finite() && h_star > 0.0) {
        return Err(Error::out_of_range("h_star", h_star, "finite and > 0"));
    }
    check_epsilon(epsilon)?;
    Ok(2.0 * (1.0 + epsilon) / h_star * ((m as f64) * (n as f64)).ln())
}

/// The constant `min(1 / f_star, 1 / (2 f_star - f_lower))`.
pub fn lower_threshold_constant(f_star: f64, f_lower: f64) -> Result<f64> {
    if !(f_star.is_finite() && f_lower > 0.0) {
        return Err(Error::out_of_range(
            "f_lower",
            f_lower,
            "0 < f_lower <= f_star < inf",
        ));
    }
    if f_lower > f_star {
        return Err(Error::out_of_range(
            "f_lower",
            f_lower,
            format!("at most f_star = {f_star}"),
        ));
    }
    Ok((1.0 / f_star).min(1.0 / (2.0 * f_star - f_lower)))
}

/// Read length below which reconstruction fails with high probability:
/// `C (1 - eps) ln(M N)`.
pub fn lower_threshold(m: usize, n: usize, f_star: f64, f_lower: f64, epsilon: f64) -> Result<f64> {
    check_counts(m, n)?;
    check_epsilon(epsilon)?;
    let c = lower_threshold_constant(f_star, f_lower)?;
    Ok(c * (1.0 - epsilon) * ((m as f64) * (n as f64)).ln())
}

/// Largest genome count compatible with the upper threshold at read length
/// `l`: `exp(l h_star / 2) / N`.
pub fn max_genomes_upper(l: usize, n: usize, h_star: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::out_of_range("N", n, ">= 1"));
    }
    if !(h_star.is_finite() && h_star > 0.0) {
        return Err(Error::out_of_range("h_star", h_star, "finite and > 0"));
    }
    Ok((l as f64 * h_star / 2.0).exp() / n as f64)
}

/// Minimum Rényi entropy over a family of distributions.
pub fn min_renyi2(dists: &[Distribution]) -> f64 {
    dists
        .iter()
        .map(renyi2_entropy)
        .fold(f64::INFINITY, f64::min)
}

/// `(min, max)` of `F(p^m, p^m')` over all ordered pairs including `m = m'`.
pub fn cross_entropy_range(dists: &[Distribution]) -> Result<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, p) in dists.iter().enumerate() {
        for q in &dists[i..] {
            let f = cross_entropy_f(p, q)?;
            lo = lo.min(f);
            hi = hi.max(f);
        }
    }
    Ok((lo, hi))
}

fn check_counts(m: usize, n: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::out_of_range("M", m, ">= 1"));
    }
    if n == 0 {
        return Err(Error::out_of_range("N", n, ">= 1"));
    }
    Ok(())
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::out_of_range("epsilon", epsilon, ">= 0"));
    }
    Ok(())
}
