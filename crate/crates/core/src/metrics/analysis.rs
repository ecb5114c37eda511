use alloc::vec;
use alloc::vec::Vec;

use crate::dataset::RatingDataset;
use crate::error::{Error, Result};
use crate::stats;

/// Mean absolute deviation of each user's ratings from the plain
/// (unweighted) mean rating of the rated objects.
pub fn rating_error(dataset: &RatingDataset) -> Vec<f64> {
    let means: Vec<f64> = (0..dataset.object_count())
        .map(|a| {
            let sum: f64 = dataset.object_ratings(a).map(|r| dataset.scale().value(r.level)).sum();
            sum / dataset.object_degree_at(a) as f64
        })
        .collect();
    (0..dataset.user_count())
        .map(|i| {
            let dev: f64 = dataset
                .user_ratings(i)
                .map(|r| libm::fabs(dataset.scale().value(r.level) - means[r.object]))
                .sum();
            dev / dataset.user_degree_at(i) as f64
        })
        .collect()
}

/// Mean degree of the objects each user rated.
pub fn trend_following(dataset: &RatingDataset) -> Vec<f64> {
    (0..dataset.user_count())
        .map(|i| {
            let sum: usize = dataset.user_ratings(i).map(|r| dataset.object_degree_at(r.object)).sum();
            sum as f64 / dataset.user_degree_at(i) as f64
        })
        .collect()
}

/// Simpson's index of diversity `1 - Σ p_b²` of the histogram of `scores`
/// over `bins` equal-width intervals spanning `[min, max]`. The maximum lands
/// in the last bin; a constant vector occupies a single bin.
pub fn simpson_diversity(scores: &[f64], bins: usize) -> Result<f64> {
    if bins < 2 {
        return Err(Error::InvalidBins(bins));
    }
    if scores.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(Error::NonFinite);
    }
    let lo = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        return Ok(0.0);
    }
    let mut counts = vec![0u64; bins];
    for &s in scores {
        let b = libm::floor((s - lo) / (hi - lo) * bins as f64) as usize;
        counts[b.min(bins - 1)] += 1;
    }
    let m = scores.len() as f64;
    let d: f64 = counts.iter().map(|&c| (c as f64 / m) * (c as f64 / m)).sum();
    Ok(1.0 - d)
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), found: y.len() });
    }
    if x.len() < 2 {
        return Err(Error::TooFewSamples);
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    stats::correlation(x, y).ok_or(Error::ZeroVariance)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinnedMean {
    pub center: f64,
    pub mean: f64,
    pub count: usize,
}

/// Min-max normalizes `indicator` into `[0, 1]`, bins it with width
/// `bin_width` (the value 1 falls into the last bin) and averages the
/// reputations of each nonempty bin.
pub fn binned_means(indicator: &[f64], reputations: &[f64], bin_width: f64) -> Result<Vec<BinnedMean>> {
    if indicator.len() != reputations.len() {
        return Err(Error::LengthMismatch { expected: indicator.len(), found: reputations.len() });
    }
    if !(bin_width > 0.0 && bin_width <= 1.0) {
        return Err(Error::InvalidBinWidth(bin_width));
    }
    let normalized = stats::min_max_normalize(indicator).ok_or(Error::DegenerateNormalization)?;
    let bins = (libm::ceil(1.0 / bin_width - 1e-9) as usize).max(1);
    let mut sums = vec![0.0f64; bins];
    let mut counts = vec![0usize; bins];
    for (x, r) in normalized.iter().zip(reputations) {
        let b = (libm::floor(x / bin_width) as usize).min(bins - 1);
        sums[b] += r;
        counts[b] += 1;
    }
    Ok((0..bins)
        .filter(|&b| counts[b] > 0)
        .map(|b| BinnedMean {
            center: (b as f64 + 0.5) * bin_width,
            mean: sums[b] / counts[b] as f64,
            count: counts[b],
        })
        .collect())
}
