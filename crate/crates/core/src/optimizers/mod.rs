//! Optimizers behind a uniform step interface.
//!
//! States are single-owner and advanced sequentially; concurrent trials each
//! own their state, oracle handle and RNG stream.

mod baselines;
mod select;
mod storm;
mod theory;

pub use baselines::{
    Adagrad, AdagradParams, Adam, AdamParams, Momentum, MomentumParams, Sgd, SgdParams,
};
pub use select::{select_output, OutputMode};
pub use storm::{storm_init, StormMode, StormParams, StormState, StormStepDetail};
pub use theory::{theory_bound, theory_constants, theory_constants_scale_form, TheoryConstants};

use crate::error::Result;
use crate::oracle::GradOracle;
use crate::rng::RngStream;
use crate::vector::Vector;

/// Scalars reported by one optimizer step.
#[derive(Debug, Clone, Copy)]
pub struct StepInfo {
    /// Step size the iterate moved with.
    pub eta: f64,
    /// Momentum weight used in this step's direction update, when the
    /// method has one.
    pub momentum: Option<f64>,
    /// Norm of the fresh sample gradient evaluated this step.
    pub grad_norm: f64,
}

/// Uniform step interface over all optimizers.
///
/// Accessors describe the *pre-step* state for iteration `t`: the iterate
/// `x_t`, the direction `d_t` (when the method keeps one), the rate that
/// preceded the upcoming step, the momentum weight attached to `d_t`, and
/// the sample-gradient norm at `x_t` for methods that track it.
pub trait Optimizer: Send {
    fn iterate(&self) -> &Vector;
    fn direction(&self) -> Option<&Vector>;
    fn pre_step_eta(&self) -> f64;
    fn momentum_weight(&self) -> Option<f64>;
    fn sample_grad_norm(&self) -> Option<f64>;
    fn step(&mut self, oracle: &dyn GradOracle, rng: &mut RngStream) -> Result<StepInfo>;
}

#[cfg(test)]
mod tests;
