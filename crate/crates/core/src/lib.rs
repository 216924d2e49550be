//! Stochastic non-convex optimization with recursive-momentum variance
//! reduction.
//!
//! The crate bundles four layers:
//!
//! * foundational types — [`Vector`], deterministic [`RngStream`]s, and the
//!   [`GradOracle`] contract every problem implements;
//! * [`optimizers`] — the STORM optimizer (adaptive and fixed-noise step
//!   schedules) plus SGD, SGD-with-momentum, AdaGrad and Adam baselines
//!   behind one step interface;
//! * [`problems`] — synthetic stochastic problems with analytically known
//!   gradients, smoothness, noise level and optimum;
//! * [`diagnostics`] and [`harness`] — numerical verifiers for the
//!   inequalities behind the optimizer's convergence analysis, and a
//!   multi-seed experiment runner with rate-exponent estimation.

pub mod diagnostics;
pub mod error;
pub mod harness;
pub mod optimizers;
pub mod oracle;
pub mod problems;
pub mod rng;
pub mod stats;
pub mod vector;

pub use error::{Error, Result};
pub use oracle::{noise_second_moment, GradOracle, NoiseSecondMoment, Sample};
pub use rng::RngStream;
pub use vector::Vector;
