use crate::error::{Error, Result};

/// How IR turns a user's squared deviations from object quality into the
/// error `f_i` that sets its reputation `(f_i + ε)^-β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IrErrorNorm {
    /// `Σ (A - Q)² / k_i²`: mean squared deviation scaled down by degree, so
    /// active users are favoured. Reproduces the published IR behaviour on
    /// MovieLens and is the default.
    #[default]
    DegreeScaled,
    /// `Σ (A - Q)² / k_i`: plain mean squared deviation.
    Mean,
}

/// Parameters shared by the ranking methods.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MethodConfig {
    /// Convergence threshold on mean squared change between iterations.
    pub delta_threshold: f64,
    pub max_iterations: usize,
    pub ir_beta: f64,
    pub ir_epsilon: f64,
    pub ir_error: IrErrorNorm,
    /// Redistribution exponent of RR. CR always runs with 1.
    pub rr_theta: f64,
    /// Lower bound applied to the reward standard deviation in GR/IGR.
    pub sigma_floor: f64,
}

impl Default for MethodConfig {
    fn default() -> Self {
        MethodConfig {
            delta_threshold: 1e-4,
            max_iterations: 1000,
            ir_beta: 1.0,
            ir_epsilon: 1e-6,
            ir_error: IrErrorNorm::default(),
            rr_theta: 3.0,
            sigma_floor: 1e-6,
        }
    }
}

impl MethodConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta_threshold > 0.0) {
            return Err(Error::InvalidConfig("delta threshold must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max iterations must be at least 1"));
        }
        if !(self.sigma_floor > 0.0) {
            return Err(Error::InvalidConfig("sigma floor must be positive"));
        }
        if !(self.ir_epsilon > 0.0) {
            return Err(Error::InvalidConfig("IR epsilon must be positive"));
        }
        if !self.ir_beta.is_finite() || !self.rr_theta.is_finite() {
            return Err(Error::InvalidConfig("beta and theta must be finite"));
        }
        if !(self.rr_theta > 0.0) {
            return Err(Error::InvalidConfig("theta must be positive"));
        }
        Ok(())
    }
}
