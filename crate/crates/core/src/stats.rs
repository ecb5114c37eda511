//! Small numeric helpers with a fixed summation order.

use alloc::vec::Vec;

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Standard deviation with divisor `n`.
pub fn population_sd(xs: &[f64]) -> f64 {
    let mu = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - mu) * (x - mu)).sum();
    libm::sqrt(ss / xs.len() as f64)
}

/// Mean and population standard deviation.
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    (mean(xs), population_sd(xs))
}

/// `Σ (a_i - b_i)² / len`, the convergence measure used by every iterative method.
pub fn mean_squared_change(next: &[f64], prev: &[f64]) -> f64 {
    debug_assert_eq!(next.len(), prev.len());
    let ss: f64 = next.iter().zip(prev).map(|(a, b)| (a - b) * (a - b)).sum();
    ss / next.len() as f64
}

/// True when all values agree to within rounding: a spread of at most
/// `1e-12` relative to the largest magnitude.
fn is_constant(xs: &[f64]) -> bool {
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    hi - lo <= 1e-12 * libm::fmax(libm::fabs(lo), libm::fabs(hi))
}

/// Pearson correlation, or `None` when fewer than two points or either
/// input is constant (up to rounding). The result is clamped into `[-1, 1]`.
pub fn correlation(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 || is_constant(xs) || is_constant(ys) {
        return None;
    }
    let mx = mean(xs);
    let my = mean(ys);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (libm::sqrt(sxx) * libm::sqrt(syy))).clamp(-1.0, 1.0))
}

/// Min-max normalization into `[0, 1]`; `None` if the input is constant.
pub fn min_max_normalize(xs: &[f64]) -> Option<Vec<f64>> {
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        return None;
    }
    Some(xs.iter().map(|x| (x - lo) / (hi - lo)).collect())
}
