//! Evaluation and analysis metrics.
//!
//! Scores are plain slices indexed like the dataset's users, and spammer
//! labels are boolean masks of the same length. A *lower* reputation means a
//! stronger spam suspect everywhere in this module.

mod analysis;
mod ranking;

pub use analysis::{binned_means, pearson, rating_error, simpson_diversity, trend_following, BinnedMean};
pub use ranking::{
    auc, degree_subgroups, evaluate, recall_at, subgroup_auc, DegreeSubgroups, RankingEvaluation, Subgroup,
    SubgroupAuc,
};
