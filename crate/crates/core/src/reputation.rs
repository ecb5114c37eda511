use alloc::vec::Vec;

use crate::dataset::RatingDataset;
use crate::id::Id;

/// Per-user reputation, indexed like [`RatingDataset::users`].
#[derive(Clone, Debug, PartialEq)]
pub struct ReputationVector {
    values: Vec<f64>,
    /// Number of reputation updates performed.
    pub iterations: usize,
    pub converged: bool,
    /// Last convergence measure, `None` for single-pass methods.
    pub final_change: Option<f64>,
}

impl ReputationVector {
    pub fn new(values: Vec<f64>, iterations: usize, converged: bool, final_change: Option<f64>) -> Self {
        ReputationVector { values, iterations, converged, final_change }
    }

    /// Plain scores without iteration metadata.
    pub fn from_values(values: Vec<f64>) -> Self {
        ReputationVector { values, iterations: 0, converged: true, final_change: None }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, dataset: &RatingDataset, user: &Id) -> Option<f64> {
        dataset.user_index(user).map(|i| self.values[i])
    }

    pub fn with_ids<'a>(&'a self, dataset: &'a RatingDataset) -> impl Iterator<Item = (&'a Id, f64)> + 'a {
        dataset.users().iter().zip(self.values.iter().copied())
    }
}

/// Per-object estimated quality, indexed like [`RatingDataset::objects`].
#[derive(Clone, Debug, PartialEq)]
pub struct QualityVector {
    values: Vec<f64>,
}

impl QualityVector {
    pub fn new(values: Vec<f64>) -> Self {
        QualityVector { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, dataset: &RatingDataset, object: &Id) -> Option<f64> {
        dataset.object_index(object).map(|a| self.values[a])
    }
}
