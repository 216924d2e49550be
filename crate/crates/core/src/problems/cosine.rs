//! Separable cosine-perturbed quadratic.
//!
//! `F(x) = (alpha/2) ||x||^2 + beta * sum_i cos(x_i)`, smooth with
//! `L = alpha + beta`, non-convex once `beta > alpha`. Noise is the same
//! additive linear perturbation as the quadratic problem. The optimum is
//! `dim` times the per-coordinate minimum of `(alpha/2) z^2 + beta cos(z)`,
//! which is `beta` exactly at `z = 0` for `beta <= alpha` and is found by
//! bisection on the stationarity condition otherwise.

use crate::error::{Error, Result};
use crate::oracle::{check_dim, GradOracle, Sample};
use crate::rng::RngStream;
use crate::vector::Vector;

use super::quadratic::DEFAULT_REGION_RADIUS;
use super::NoiseKind;

#[derive(Debug, Clone)]
pub struct CosineQuadratic {
    alpha: f64,
    beta: f64,
    dim: usize,
    noise: NoiseKind,
    sigma_sq: f64,
    lipschitz: Option<f64>,
    f_star: f64,
    f_star_abs_tol: f64,
    minimizer_at_origin: bool,
}

impl CosineQuadratic {
    pub fn new(dim: usize, alpha: f64, beta: f64, noise: NoiseKind) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dim must be at least 1"));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::invalid(format!("alpha must be positive, got {alpha}")));
        }
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::invalid(format!(
                "beta must be non-negative, got {beta}"
            )));
        }
        noise.validate()?;
        let (per_coord_min, tol, at_origin) = coordinate_minimum(alpha, beta);
        let lipschitz = noise
            .radius_bound()
            .map(|r| alpha * DEFAULT_REGION_RADIUS + beta * (dim as f64).sqrt() + r);
        Ok(CosineQuadratic {
            alpha,
            beta,
            dim,
            sigma_sq: noise.second_moment(dim),
            noise,
            lipschitz,
            f_star: dim as f64 * per_coord_min,
            f_star_abs_tol: dim as f64 * tol,
            minimizer_at_origin: at_origin,
        })
    }

    pub fn minimizer(&self) -> Option<Vector> {
        self.minimizer_at_origin.then(|| Vector::zeros(self.dim))
    }

    /// Absolute tolerance attached to the numerically computed optimum.
    pub fn f_star_abs_tol(&self) -> f64 {
        self.f_star_abs_tol
    }
}

/// Minimum of `g(z) = (alpha/2) z^2 + beta cos(z)`, its tolerance, and
/// whether the minimizer is the origin.
fn coordinate_minimum(alpha: f64, beta: f64) -> (f64, f64, bool) {
    if beta <= alpha {
        // g'(z) = alpha z - beta sin(z) >= (alpha - beta) z >= 0 on z >= 0,
        // vanishing only at 0, so the origin is the exact minimizer.
        return (beta, 0.0, true);
    }
    // g'(0) = 0 is a local max; the minimizer is the root of
    // alpha z = beta sin(z) in (0, pi).
    let g = |z: f64| 0.5 * alpha * z * z + beta * z.cos();
    let dg = |z: f64| alpha * z - beta * z.sin();
    let (mut lo, mut hi) = (1e-9, std::f64::consts::PI);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if dg(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let z = 0.5 * (lo + hi);
    (g(z), 1e-12 * g(z).abs().max(1.0), false)
}

impl GradOracle for CosineQuadratic {
    fn dim(&self) -> usize {
        self.dim
    }

    fn smoothness(&self) -> f64 {
        self.alpha + self.beta
    }

    fn lipschitz_bound(&self) -> Option<f64> {
        self.lipschitz
    }

    fn noise_bound(&self) -> f64 {
        self.sigma_sq.sqrt()
    }

    fn optimum_value(&self) -> Option<f64> {
        Some(self.f_star)
    }

    fn draw_sample(&self, rng: &mut RngStream) -> Sample {
        Sample::Noise(self.noise.draw(self.dim, rng))
    }

    fn stochastic_grad(&self, x: &Vector, sample: &Sample) -> Result<Vector> {
        check_dim(self, x)?;
        let noise = match sample {
            Sample::Noise(v) => v,
            Sample::Index(_) => return Err(Error::SampleKind { expected: "noise" }),
        };
        Ok(Vector::from_vec(
            x.iter()
                .zip(noise.iter())
                .map(|(xi, n)| self.alpha * xi - self.beta * xi.sin() + n)
                .collect(),
        ))
    }

    fn true_grad(&self, x: &Vector) -> Option<Vector> {
        Some(Vector::from_vec(
            x.iter()
                .map(|xi| self.alpha * xi - self.beta * xi.sin())
                .collect(),
        ))
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        Some(
            x.iter()
                .map(|xi| 0.5 * self.alpha * xi * xi + self.beta * xi.cos())
                .sum(),
        )
    }
}
