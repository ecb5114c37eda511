//! Group-based ranking.
//!
//! Users who give the same rating value to the same object form a group.
//! Each group's size is the total reputation of its members; normalizing the
//! sizes of an object's groups by their column sum gives the reward a rating
//! earns. A user's reputation is the mean of their rewards divided by the
//! (floored) standard deviation. GR does this once from unit reputations,
//! IGR feeds the reputations back until they settle.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::MethodConfig;
use crate::dataset::RatingDataset;
use crate::error::{Error, Result};
use crate::reputation::ReputationVector;
use crate::stats;

/// Sparse (rating level, object) table of weighted group sizes and their
/// column-normalized rewards. Only observed groups are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSizeTable {
    offsets: Vec<usize>,
    levels: Vec<u16>,
    lambda: Vec<f64>,
    reward: Vec<f64>,
}

impl GroupSizeTable {
    pub fn object_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// `(level, Λ, Λ*)` for each observed group of `object`, by increasing level.
    pub fn column(&self, object: usize) -> impl Iterator<Item = (u16, f64, f64)> + '_ {
        let r = self.offsets[object]..self.offsets[object + 1];
        r.map(move |k| (self.levels[k], self.lambda[k], self.reward[k]))
    }

    fn find(&self, level: u16, object: usize) -> Option<usize> {
        let r = self.offsets[object]..self.offsets[object + 1];
        self.levels[r.clone()].binary_search(&level).ok().map(|k| r.start + k)
    }

    /// Weighted group size; zero for groups nobody belongs to.
    pub fn lambda(&self, level: u16, object: usize) -> f64 {
        self.find(level, object).map_or(0.0, |k| self.lambda[k])
    }

    /// Normalized reward of a group; zero for groups nobody belongs to.
    pub fn reward(&self, level: u16, object: usize) -> f64 {
        self.find(level, object).map_or(0.0, |k| self.reward[k])
    }
}

/// Reward of every rating, indexed by edge (user-major).
#[derive(Clone, Debug, PartialEq)]
pub struct RewardMatrix {
    values: Vec<f64>,
}

impl RewardMatrix {
    pub fn edge(&self, edge: usize) -> f64 {
        self.values[edge]
    }

    pub fn of_user<'a>(&'a self, dataset: &RatingDataset, user: usize) -> &'a [f64] {
        &self.values[dataset.user_edges(user)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn check_reputations(dataset: &RatingDataset, reputations: &[f64]) -> Result<()> {
    if reputations.len() != dataset.user_count() {
        return Err(Error::LengthMismatch { expected: dataset.user_count(), found: reputations.len() });
    }
    if reputations.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
        return Err(Error::NegativeReputation);
    }
    Ok(())
}

pub fn compute_group_sizes(dataset: &RatingDataset, reputations: &[f64]) -> Result<GroupSizeTable> {
    check_reputations(dataset, reputations)?;
    let z = dataset.scale().len();
    let n = dataset.object_count();
    let mut scratch = vec![0.0f64; z];
    let mut seen = vec![false; z];
    let mut table = GroupSizeTable {
        offsets: Vec::with_capacity(n + 1),
        levels: Vec::new(),
        lambda: Vec::new(),
        reward: Vec::new(),
    };
    table.offsets.push(0);
    for object in 0..n {
        for r in dataset.object_ratings(object) {
            scratch[r.level as usize] += reputations[r.user];
            seen[r.level as usize] = true;
        }
        let start = table.levels.len();
        let mut column_sum = 0.0;
        for level in 0..z {
            if seen[level] {
                table.levels.push(level as u16);
                table.lambda.push(scratch[level]);
                column_sum += scratch[level];
                scratch[level] = 0.0;
                seen[level] = false;
            }
        }
        if !(column_sum > 0.0) {
            return Err(Error::ZeroColumnSum { object: dataset.objects()[object].clone() });
        }
        for k in start..table.levels.len() {
            table.reward.push(table.lambda[k] / column_sum);
        }
        table.offsets.push(table.levels.len());
    }
    Ok(table)
}

pub fn compute_rewards(dataset: &RatingDataset, table: &GroupSizeTable) -> RewardMatrix {
    let levels = dataset.edge_levels();
    let objects = dataset.edge_objects();
    let values = levels
        .iter()
        .zip(objects)
        .map(|(&level, &object)| {
            let k = table
                .find(level, object as usize)
                .expect("table built from the same dataset");
            table.reward[k]
        })
        .collect();
    RewardMatrix { values }
}

/// `μ / max(σ, sigma_floor)` over one user's rewards, with population σ.
pub fn reputation_from_rewards(rewards: &[f64], sigma_floor: f64) -> Result<f64> {
    if rewards.is_empty() {
        return Err(Error::EmptyRewards);
    }
    let (mu, sigma) = stats::mean_sd(rewards);
    Ok(mu / sigma.max(sigma_floor))
}

fn update(dataset: &RatingDataset, sigma_floor: f64, table: &GroupSizeTable) -> Result<Vec<f64>> {
    let rewards = compute_rewards(dataset, table);
    (0..dataset.user_count())
        .map(|i| reputation_from_rewards(rewards.of_user(dataset, i), sigma_floor))
        .collect()
}

/// Single pass from unit reputations.
pub fn gr_rank(dataset: &RatingDataset, config: &MethodConfig) -> Result<ReputationVector> {
    config.validate()?;
    let ones = vec![1.0; dataset.user_count()];
    let table = compute_group_sizes(dataset, &ones)?;
    let values = update(dataset, config.sigma_floor, &table)?;
    Ok(ReputationVector::new(values, 1, true, None))
}

pub fn igr_rank(dataset: &RatingDataset, config: &MethodConfig) -> Result<ReputationVector> {
    igr_rank_observed(dataset, config, |_, _| {})
}

/// IGR, calling `observe(iteration, table)` with the group-size table built
/// at the start of every iteration (1-based).
pub fn igr_rank_observed<F>(dataset: &RatingDataset, config: &MethodConfig, mut observe: F) -> Result<ReputationVector>
where
    F: FnMut(usize, &GroupSizeTable),
{
    config.validate()?;
    let mut current = vec![1.0; dataset.user_count()];
    let mut change = f64::INFINITY;
    for iteration in 1..=config.max_iterations {
        let table = compute_group_sizes(dataset, &current)?;
        observe(iteration, &table);
        let next = update(dataset, config.sigma_floor, &table)?;
        change = stats::mean_squared_change(&next, &current);
        current = next;
        if change < config.delta_threshold {
            return Ok(ReputationVector::new(current, iteration, true, Some(change)));
        }
    }
    Ok(ReputationVector::new(current, config.max_iterations, false, Some(change)))
}
