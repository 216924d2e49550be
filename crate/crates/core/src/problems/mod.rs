//! Synthetic stochastic problems with analytically known constants.
//!
//! Every problem declares its smoothness `L`, noise level `sigma`, and —
//! where they exist — a gradient-norm bound `G` and the optimum `F*`, so
//! the diagnostics layer can check each assumption numerically. Problem
//! specs are immutable after construction and freely shared across threads.
//!
//! Problems serialize to/from a JSON descriptor ([`ProblemConfig`]), so an
//! experiment is fully specified by a config file.

mod cosine;
mod logistic;
mod quadratic;

pub use cosine::CosineQuadratic;
pub use logistic::LogisticFiniteSum;
pub use quadratic::{NoisyQuadratic, DEFAULT_REGION_RADIUS};

use crate::error::{Error, Result};
use crate::oracle::GradOracle;
use crate::rng::RngStream;
use crate::vector::Vector;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Additive gradient-noise model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseKind {
    None,
    /// I.i.d. Gaussian per coordinate. No gradient-norm bound exists.
    Gaussian { std: f64 },
    /// Uniform on the Euclidean ball of the given radius.
    BoundedUniform { radius: f64 },
}

impl NoiseKind {
    pub(crate) fn validate(&self) -> Result<()> {
        match *self {
            NoiseKind::None => Ok(()),
            NoiseKind::Gaussian { std } if std >= 0.0 && std.is_finite() => Ok(()),
            NoiseKind::BoundedUniform { radius } if radius >= 0.0 && radius.is_finite() => Ok(()),
            _ => Err(Error::invalid("noise parameter must be non-negative")),
        }
    }

    /// `E ||xi||^2` in closed form.
    pub fn second_moment(&self, dim: usize) -> f64 {
        let d = dim as f64;
        match *self {
            NoiseKind::None => 0.0,
            NoiseKind::Gaussian { std } => d * std * std,
            NoiseKind::BoundedUniform { radius } => radius * radius * d / (d + 2.0),
        }
    }

    /// Almost-sure bound on `||xi||`, when one exists.
    pub fn radius_bound(&self) -> Option<f64> {
        match *self {
            NoiseKind::None => Some(0.0),
            NoiseKind::Gaussian { .. } => None,
            NoiseKind::BoundedUniform { radius } => Some(radius),
        }
    }

    pub(crate) fn draw(&self, dim: usize, rng: &mut RngStream) -> Vector {
        match *self {
            NoiseKind::None => Vector::zeros(dim),
            NoiseKind::Gaussian { std } => rng.normal_vector(dim, std),
            NoiseKind::BoundedUniform { radius } => rng.ball_vector(dim, radius),
        }
    }
}

/// JSON-serializable problem descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum ProblemConfig {
    NoisyQuadratic {
        dim: usize,
        condition_number: f64,
        noise: NoiseKind,
    },
    CosineQuadratic {
        dim: usize,
        alpha: f64,
        beta: f64,
        noise: NoiseKind,
    },
    Logistic {
        n: usize,
        dim: usize,
        feature_scale: f64,
        seed: u64,
    },
}

impl ProblemConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemConfig::NoisyQuadratic { .. } => "noisy_quadratic",
            ProblemConfig::CosineQuadratic { .. } => "cosine_quadratic",
            ProblemConfig::Logistic { .. } => "logistic",
        }
    }

    pub fn build(&self) -> Result<ProblemSpec> {
        match *self {
            ProblemConfig::NoisyQuadratic {
                dim,
                condition_number,
                noise,
            } => make_noisy_quadratic(dim, condition_number, noise),
            ProblemConfig::CosineQuadratic {
                dim,
                alpha,
                beta,
                noise,
            } => make_cosine_quadratic(dim, alpha, beta, noise),
            ProblemConfig::Logistic {
                n,
                dim,
                feature_scale,
                seed,
            } => make_logistic(n, dim, feature_scale, seed),
        }
    }
}

/// A built problem: the oracle plus descriptor and minimizer information.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub config: ProblemConfig,
    pub oracle: Arc<dyn GradOracle>,
    pub x_star: Option<Vector>,
    /// Absolute tolerance on the declared optimum (0 when closed-form).
    pub f_star_abs_tol: f64,
    /// Whether the declared noise second moment is exact, as opposed to a
    /// point estimate.
    pub sigma_sq_exact: bool,
}

impl std::fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("config", &self.config)
            .field("dim", &self.oracle.dim())
            .finish()
    }
}

/// Diagonal quadratic with eigenvalues log-spaced in
/// `[1/condition_number, 1]` and zero offset, so the minimizer is the
/// origin and `F* = 0` exactly.
pub fn make_noisy_quadratic(
    dim: usize,
    condition_number: f64,
    noise: NoiseKind,
) -> Result<ProblemSpec> {
    if dim == 0 {
        return Err(Error::invalid("dim must be at least 1"));
    }
    if !(condition_number >= 1.0 && condition_number.is_finite()) {
        return Err(Error::invalid(format!(
            "condition number must be >= 1, got {condition_number}"
        )));
    }
    let eigs = quadratic::log_spaced_eigs(dim, condition_number);
    let oracle = NoisyQuadratic::new(eigs, Vector::zeros(dim), noise)?;
    let x_star = oracle.minimizer();
    Ok(ProblemSpec {
        name: "noisy_quadratic".into(),
        config: ProblemConfig::NoisyQuadratic {
            dim,
            condition_number,
            noise,
        },
        oracle: Arc::new(oracle),
        x_star,
        f_star_abs_tol: 0.0,
        sigma_sq_exact: true,
    })
}

pub fn make_cosine_quadratic(
    dim: usize,
    alpha: f64,
    beta: f64,
    noise: NoiseKind,
) -> Result<ProblemSpec> {
    let oracle = CosineQuadratic::new(dim, alpha, beta, noise)?;
    let x_star = oracle.minimizer();
    let f_star_abs_tol = oracle.f_star_abs_tol();
    Ok(ProblemSpec {
        name: "cosine_quadratic".into(),
        config: ProblemConfig::CosineQuadratic {
            dim,
            alpha,
            beta,
            noise,
        },
        oracle: Arc::new(oracle),
        x_star,
        f_star_abs_tol,
        sigma_sq_exact: true,
    })
}

/// Logistic finite sum over `n` seeded Gaussian feature rows with labels
/// from a planted separator. Features are drawn once and frozen.
pub fn make_logistic(n: usize, dim: usize, feature_scale: f64, seed: u64) -> Result<ProblemSpec> {
    if n == 0 || dim == 0 {
        return Err(Error::invalid("n and dim must be at least 1"));
    }
    if !(feature_scale >= 0.0 && feature_scale.is_finite()) {
        return Err(Error::invalid("feature scale must be non-negative"));
    }
    let mut rng = RngStream::derive(seed, &[0x109]);
    let planted = rng.normal_vector(dim, 1.0);
    let mut features = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let row = rng.normal_vector(dim, feature_scale);
        let y = if row.dot(&planted) >= 0.0 { 1.0 } else { -1.0 };
        features.push(row);
        labels.push(y);
    }
    let oracle = LogisticFiniteSum::new(features, labels)?;
    Ok(ProblemSpec {
        name: "logistic".into(),
        config: ProblemConfig::Logistic {
            n,
            dim,
            feature_scale,
            seed,
        },
        oracle: Arc::new(oracle),
        x_star: None,
        f_star_abs_tol: 0.0,
        sigma_sq_exact: false,
    })
}
