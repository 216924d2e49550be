//! The stochastic gradient oracle contract.
//!
//! An oracle provides sample gradients `grad f(x, xi)` whose mean over fresh
//! samples equals the true gradient `grad F(x)`. Each update of a
//! variance-reduced optimizer evaluates gradients at two different points on
//! the *same* sample, so a [`Sample`] stores the full drawn realization (a
//! noise vector or a data index), never just a generator state: evaluating
//! the same sample twice at the same point is bit-identical by construction.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::stats::RunningStat;
use crate::vector::Vector;
use serde::{Deserialize, Serialize};

/// One drawn realization of the oracle's randomness. Immutable once drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Sample {
    /// An additive noise realization.
    Noise(Vector),
    /// An index into a finite training set.
    Index(usize),
}

/// A stochastic first-order oracle with declared problem constants.
///
/// `stochastic_grad` must be a pure function of `(x, sample)`. Optional
/// capabilities (true gradient, function value, gradient bound, optimum)
/// return `None` when the problem cannot expose them.
pub trait GradOracle: Send + Sync {
    fn dim(&self) -> usize;

    /// Smoothness constant L, valid for every sample function and for F.
    fn smoothness(&self) -> f64;

    /// Gradient-norm bound G over the declared region, when one exists.
    fn lipschitz_bound(&self) -> Option<f64>;

    /// Declared noise level sigma with
    /// `E ||grad f(x, xi) - grad F(x)||^2 <= sigma^2`.
    fn noise_bound(&self) -> f64;

    /// Infimum of F, when known.
    fn optimum_value(&self) -> Option<f64>;

    /// Draw an i.i.d. sample, advancing the stream deterministically.
    fn draw_sample(&self, rng: &mut RngStream) -> Sample;

    /// `grad f(x, sample)`; bit-exactly repeatable for fixed inputs.
    fn stochastic_grad(&self, x: &Vector, sample: &Sample) -> Result<Vector>;

    /// `grad F(x)`, when the problem exposes it.
    fn true_grad(&self, x: &Vector) -> Option<Vector>;

    /// `F(x)`, when the problem exposes it.
    fn value(&self, x: &Vector) -> Option<f64>;

    fn has_true_grad(&self) -> bool {
        self.true_grad(&Vector::zeros(self.dim())).is_some()
    }

    fn has_value(&self) -> bool {
        self.value(&Vector::zeros(self.dim())).is_some()
    }
}

pub(crate) fn check_dim(oracle: &dyn GradOracle, x: &Vector) -> Result<()> {
    if x.dim() != oracle.dim() {
        return Err(Error::DimensionMismatch {
            expected: oracle.dim(),
            got: x.dim(),
        });
    }
    Ok(())
}

/// Monte-Carlo estimate of the gradient-noise second moment at `x`.
#[derive(Debug, Clone, Serialize)]
pub struct NoiseSecondMoment {
    /// `(1/n) sum ||grad f(x, xi_j) - grad F(x)||^2`
    pub mean: f64,
    /// Standard error of the mean; `None` when `n == 1`.
    pub stderr: Option<f64>,
    pub samples: u64,
}

/// Estimates `E ||grad f(x, xi) - grad F(x)||^2` over `n` fresh samples.
///
/// Requires the oracle to expose its true gradient.
pub fn noise_second_moment(
    oracle: &dyn GradOracle,
    x: &Vector,
    n: u64,
    rng: &mut RngStream,
) -> Result<NoiseSecondMoment> {
    if n == 0 {
        return Err(Error::invalid("noise_second_moment needs n >= 1"));
    }
    check_dim(oracle, x)?;
    let true_grad = oracle
        .true_grad(x)
        .ok_or(Error::MissingCapability("true_grad"))?;
    let mut stat = RunningStat::new();
    for _ in 0..n {
        let sample = oracle.draw_sample(rng);
        let g = oracle.stochastic_grad(x, &sample)?;
        stat.push(g.dist_sq(&true_grad));
    }
    Ok(NoiseSecondMoment {
        mean: stat.mean(),
        stderr: stat.stderr(),
        samples: n,
    })
}
