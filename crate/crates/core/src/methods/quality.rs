//! Quality-based ranking: reputations derived from how well a user's ratings
//! agree with the reputation-weighted mean rating of each object.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::{IrErrorNorm, MethodConfig};
use crate::dataset::RatingDataset;
use crate::error::{Error, Result};
use crate::reputation::{QualityVector, ReputationVector};
use crate::stats;

/// Reputation-weighted mean rating of each object. With `fallback`, objects
/// whose raters carry zero total reputation keep the fallback value instead
/// of failing.
fn weighted_quality(dataset: &RatingDataset, reputations: &[f64], fallback: Option<&[f64]>) -> Result<Vec<f64>> {
    if reputations.len() != dataset.user_count() {
        return Err(Error::LengthMismatch { expected: dataset.user_count(), found: reputations.len() });
    }
    (0..dataset.object_count())
        .map(|object| {
            let (mut num, mut den) = (0.0, 0.0);
            for r in dataset.object_ratings(object) {
                let w = reputations[r.user];
                num += w * dataset.scale().value(r.level);
                den += w;
            }
            if den > 0.0 {
                Ok(num / den)
            } else if let Some(prev) = fallback {
                Ok(prev[object])
            } else {
                Err(Error::ZeroReputationSum { object: dataset.objects()[object].clone() })
            }
        })
        .collect()
}

pub fn estimate_quality(dataset: &RatingDataset, reputations: &ReputationVector) -> Result<QualityVector> {
    weighted_quality(dataset, reputations.values(), None).map(QualityVector::new)
}

fn squared_error_sum(dataset: &RatingDataset, quality: &[f64], user: usize) -> f64 {
    dataset
        .user_ratings(user)
        .map(|r| {
            let d = dataset.scale().value(r.level) - quality[r.object];
            d * d
        })
        .sum()
}

/// Iterative refinement: `R_i = (f_i + ε)^-β` with `f_i` the user's squared
/// deviation from current quality, normalized per [`IrErrorNorm`]. Stops when
/// both the reputation and the quality change fall below the threshold.
pub fn ir_rank(dataset: &RatingDataset, config: &MethodConfig) -> Result<ReputationVector> {
    config.validate()?;
    let mut reputation = vec![1.0; dataset.user_count()];
    let mut quality = weighted_quality(dataset, &reputation, None)?;
    let mut change = f64::INFINITY;
    for iteration in 1..=config.max_iterations {
        let next: Vec<f64> = (0..dataset.user_count())
            .map(|i| {
                let k = dataset.user_degree_at(i) as f64;
                let norm = match config.ir_error {
                    IrErrorNorm::Mean => k,
                    IrErrorNorm::DegreeScaled => k * k,
                };
                let f = squared_error_sum(dataset, &quality, i) / norm;
                libm::pow(f + config.ir_epsilon, -config.ir_beta)
            })
            .collect();
        let next_quality = weighted_quality(dataset, &next, None)?;
        let dr = stats::mean_squared_change(&next, &reputation);
        let dq = stats::mean_squared_change(&next_quality, &quality);
        change = dr.max(dq);
        reputation = next;
        quality = next_quality;
        if dr < config.delta_threshold && dq < config.delta_threshold {
            return Ok(ReputationVector::new(reputation, iteration, true, Some(change)));
        }
    }
    Ok(ReputationVector::new(reputation, config.max_iterations, false, Some(change)))
}

/// Pearson correlation between a user's ratings and the current quality of
/// the rated objects, negative values clamped to zero. Undefined
/// correlations (fewer than two ratings, or a constant side) count as zero.
pub fn temporal_reputations(dataset: &RatingDataset, quality: &[f64]) -> Result<Vec<f64>> {
    if quality.len() != dataset.object_count() {
        return Err(Error::LengthMismatch { expected: dataset.object_count(), found: quality.len() });
    }
    let (mut ratings, mut qualities) = (Vec::new(), Vec::new());
    Ok((0..dataset.user_count())
        .map(|user| {
            ratings.clear();
            qualities.clear();
            for r in dataset.user_ratings(user) {
                ratings.push(dataset.scale().value(r.level));
                qualities.push(quality[r.object]);
            }
            stats::correlation(&ratings, &qualities).map_or(0.0, |c| c.max(0.0))
        })
        .collect())
}

/// `R_i = TR_i^θ Σ TR / Σ TR^θ`, which keeps the total of `tr`.
pub fn redistribute(tr: &[f64], theta: f64) -> Result<Vec<f64>> {
    let powered: Vec<f64> = tr.iter().map(|&t| libm::pow(t, theta)).collect();
    let total: f64 = tr.iter().sum();
    let total_powered: f64 = powered.iter().sum();
    if !(total > 0.0 && total_powered > 0.0) {
        return Err(Error::TemporalReputationVanished);
    }
    let scale = total / total_powered;
    Ok(powered.iter().map(|p| p * scale).collect())
}

/// CR (`theta = 1`) and RR. Starts from `R_i = k_i / n` and redistributes the
/// temporal reputations until the quality change falls below the threshold.
fn correlation_rank(dataset: &RatingDataset, config: &MethodConfig, theta: f64) -> Result<ReputationVector> {
    config.validate()?;
    let mut reputation = initial_reputations(dataset);
    let mut quality = weighted_quality(dataset, &reputation, None)?;
    let mut change = f64::INFINITY;
    for iteration in 1..=config.max_iterations {
        reputation = redistribute(&temporal_reputations(dataset, &quality)?, theta)?;
        let next_quality = weighted_quality(dataset, &reputation, Some(&quality))?;
        change = stats::mean_squared_change(&next_quality, &quality);
        quality = next_quality;
        if change < config.delta_threshold {
            return Ok(ReputationVector::new(reputation, iteration, true, Some(change)));
        }
    }
    Ok(ReputationVector::new(reputation, config.max_iterations, false, Some(change)))
}

/// CR/RR starting point `k_i / n`.
pub fn initial_reputations(dataset: &RatingDataset) -> Vec<f64> {
    let n = dataset.object_count() as f64;
    (0..dataset.user_count()).map(|i| dataset.user_degree_at(i) as f64 / n).collect()
}

/// RR with `config.rr_theta`; `rr_theta = 1` is CR.
pub fn cr_rr_rank(dataset: &RatingDataset, config: &MethodConfig) -> Result<ReputationVector> {
    correlation_rank(dataset, config, config.rr_theta)
}

pub fn cr_rank(dataset: &RatingDataset, config: &MethodConfig) -> Result<ReputationVector> {
    correlation_rank(dataset, config, 1.0)
}
