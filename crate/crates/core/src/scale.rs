use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Ordered set of admissible discrete rating values.
#[derive(Clone, Debug, PartialEq)]
pub struct RatingScale {
    values: Vec<f64>,
}

impl RatingScale {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidScale("at least two rating values are required"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidScale("rating values must be finite"));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidScale("rating values must be strictly increasing"));
        }
        Ok(RatingScale { values })
    }

    /// Integer scale `lo..=hi`.
    pub fn integer(lo: i32, hi: i32) -> Result<Self> {
        Self::new((lo..=hi).map(f64::from).collect())
    }

    /// The 1..5 star scale used by MovieLens and Netflix.
    pub fn five_star() -> Self {
        Self::integer(1, 5).expect("1..=5 is a valid scale")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, level: u16) -> f64 {
        self.values[level as usize]
    }

    /// Position of `value` in the scale, if it is a member.
    pub fn level_of(&self, value: f64) -> Option<u16> {
        self.values.iter().position(|v| *v == value).map(|p| p as u16)
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn lowest_level(&self) -> u16 {
        0
    }

    pub fn highest_level(&self) -> u16 {
        (self.values.len() - 1) as u16
    }
}
