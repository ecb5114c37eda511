//! Reputation estimation for users of discrete online rating systems.
//!
//! The crate models ratings as a weighted bipartite network between users and
//! objects and ranks users with five estimators: the group-based GR and its
//! iterative variant IGR, and the quality-based IR, CR and RR. It also
//! generates labelled artificial spammers and computes the evaluation metrics
//! used to compare the estimators (recall, exact AUC, rating error, trend
//! following, Simpson diversity, Pearson correlation).
//!
//! Everything here is a pure function of its inputs and builds on `alloc`
//! only; file formats and the experiment CLI live in the `repute` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod config;
mod dataset;
mod error;
mod id;
pub mod methods;
pub mod metrics;
mod reputation;
mod scale;
pub mod seed;
pub mod spam;
pub mod stats;
mod subset;

pub use config::{IrErrorNorm, MethodConfig};
pub use dataset::{DatasetBuilder, Rating, RatingDataset};
pub use error::{Error, Result};
pub use id::Id;
pub use methods::Method;
pub use reputation::{QualityVector, ReputationVector};
pub use scale::RatingScale;
pub use spam::{inject, SpamExperiment, SpamKind, SpamSpec};
pub use subset::sample_subset;
