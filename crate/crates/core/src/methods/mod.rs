//! The five reputation estimators behind a single [`Method`] switch.

mod group;
mod quality;

use core::fmt;
use core::str::FromStr;

pub use group::{
    compute_group_sizes, compute_rewards, gr_rank, igr_rank, igr_rank_observed, reputation_from_rewards,
    GroupSizeTable, RewardMatrix,
};
pub use quality::{cr_rank, cr_rr_rank, estimate_quality, initial_reputations, ir_rank, redistribute, temporal_reputations};

use crate::config::MethodConfig;
use crate::dataset::RatingDataset;
use crate::error::Result;
use crate::reputation::ReputationVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Ir,
    Cr,
    Rr,
    Gr,
    Igr,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Ir, Method::Cr, Method::Rr, Method::Gr, Method::Igr];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ir => "IR",
            Method::Cr => "CR",
            Method::Rr => "RR",
            Method::Gr => "GR",
            Method::Igr => "IGR",
        }
    }

    pub fn is_iterative(self) -> bool {
        self != Method::Gr
    }

    pub fn rank(self, dataset: &RatingDataset, config: &MethodConfig) -> Result<ReputationVector> {
        match self {
            Method::Ir => ir_rank(dataset, config),
            Method::Cr => cr_rank(dataset, config),
            Method::Rr => cr_rr_rank(dataset, config),
            Method::Gr => gr_rank(dataset, config),
            Method::Igr => igr_rank(dataset, config),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMethod;

impl fmt::Display for UnknownMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown method (expected one of ir, cr, rr, gr, igr)")
    }
}

impl core::error::Error for UnknownMethod {}

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or(UnknownMethod)
    }
}
