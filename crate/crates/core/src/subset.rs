use alloc::vec::Vec;

use crate::dataset::RatingDataset;
use crate::error::{Error, Result};
use crate::seed;

/// Uniformly samples `user_count` users of degree at least `min_user_degree`,
/// keeping all their ratings and only the objects they rated.
pub fn sample_subset(dataset: &RatingDataset, user_count: usize, min_user_degree: usize, seed: u64) -> Result<RatingDataset> {
    let qualifying: Vec<usize> = (0..dataset.user_count())
        .filter(|&i| dataset.user_degree_at(i) >= min_user_degree)
        .collect();
    if user_count == 0 || qualifying.len() < user_count {
        return Err(Error::NotEnoughUsers { requested: user_count, available: qualifying.len() });
    }
    let mut rng = seed::rng_from_seed(seed);
    let picked: Vec<usize> = rand::seq::index::sample(&mut rng, qualifying.len(), user_count)
        .into_iter()
        .map(|k| qualifying[k])
        .collect();
    dataset.restrict_users(&picked)
}
