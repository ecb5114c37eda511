//! File formats, experiment sweeps and the command-line front end for
//! `repute-core`.

pub mod cli;
pub mod correlate;
pub mod error;
pub mod files;
pub mod plan;
pub mod sweep;

pub use error::{ReputeError, Result};
