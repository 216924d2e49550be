//! Diagonal quadratic with additive linear noise.
//!
//! `F(x) = (1/2) x' A x - b' x` with diagonal positive semi-definite `A`.
//! Sample functions are `f(x, xi) = F(x) + xi . x` with `E[xi] = 0`, so the
//! sample gradient is `A x - b + xi`: unbiased, per-sample smooth with the
//! same `L = max eig(A)`, and with an x-independent, exactly known noise
//! second moment `E ||xi||^2`.

use crate::error::{Error, Result};
use crate::oracle::{check_dim, GradOracle, Sample};
use crate::rng::RngStream;
use crate::vector::Vector;

use super::NoiseKind;

/// Region radius the gradient-norm bound is declared over; gradients of a
/// quadratic are unbounded globally, so `G` is stated for `||x|| <= R`.
pub const DEFAULT_REGION_RADIUS: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct NoisyQuadratic {
    eigs: Vec<f64>,
    offset: Vector,
    noise: NoiseKind,
    sigma_sq: f64,
    lipschitz: Option<f64>,
    f_star: Option<f64>,
    region_radius: f64,
}

impl NoisyQuadratic {
    /// Build from the diagonal of `A` and the offset `b`. Eigenvalues must
    /// be non-negative; the optimum is exposed only when all are positive.
    pub fn new(eigs: Vec<f64>, offset: Vector, noise: NoiseKind) -> Result<Self> {
        if eigs.is_empty() || eigs.len() != offset.dim() {
            return Err(Error::invalid("eigenvalue/offset dimension mismatch"));
        }
        if eigs.iter().any(|&e| !(e >= 0.0) || !e.is_finite()) {
            return Err(Error::invalid("eigenvalues must be non-negative"));
        }
        noise.validate()?;
        let dim = eigs.len();
        let lambda_max = eigs.iter().cloned().fold(0.0, f64::max);
        let f_star = if eigs.iter().all(|&e| e > 0.0) {
            Some(-0.5 * eigs.iter().zip(offset.iter()).map(|(e, b)| b * b / e).sum::<f64>())
        } else {
            None
        };
        // The declared region must cover both typical starts and the
        // minimizer, so it is widened when the minimizer sits far out.
        let region_radius = match &f_star {
            Some(_) => {
                let x_star_norm = eigs
                    .iter()
                    .zip(offset.iter())
                    .map(|(e, b)| (b / e) * (b / e))
                    .sum::<f64>()
                    .sqrt();
                DEFAULT_REGION_RADIUS.max(4.0 * x_star_norm)
            }
            None => DEFAULT_REGION_RADIUS,
        };
        let lipschitz = noise
            .radius_bound()
            .map(|r| lambda_max * region_radius + offset.norm() + r);
        Ok(NoisyQuadratic {
            sigma_sq: noise.second_moment(dim),
            eigs,
            offset,
            noise,
            lipschitz,
            f_star,
            region_radius,
        })
    }

    pub fn minimizer(&self) -> Option<Vector> {
        if self.eigs.iter().all(|&e| e > 0.0) {
            Some(Vector::from_vec(
                self.eigs
                    .iter()
                    .zip(self.offset.iter())
                    .map(|(e, b)| b / e)
                    .collect(),
            ))
        } else {
            None
        }
    }

    pub fn region_radius(&self) -> f64 {
        self.region_radius
    }

    pub fn eigs(&self) -> &[f64] {
        &self.eigs
    }
}

impl GradOracle for NoisyQuadratic {
    fn dim(&self) -> usize {
        self.eigs.len()
    }

    fn smoothness(&self) -> f64 {
        self.eigs.iter().cloned().fold(0.0, f64::max)
    }

    fn lipschitz_bound(&self) -> Option<f64> {
        self.lipschitz
    }

    fn noise_bound(&self) -> f64 {
        self.sigma_sq.sqrt()
    }

    fn optimum_value(&self) -> Option<f64> {
        self.f_star
    }

    fn draw_sample(&self, rng: &mut RngStream) -> Sample {
        Sample::Noise(self.noise.draw(self.dim(), rng))
    }

    fn stochastic_grad(&self, x: &Vector, sample: &Sample) -> Result<Vector> {
        check_dim(self, x)?;
        let noise = match sample {
            Sample::Noise(v) => v,
            Sample::Index(_) => return Err(Error::SampleKind { expected: "noise" }),
        };
        Ok(Vector::from_vec(
            self.eigs
                .iter()
                .zip(x.iter())
                .zip(self.offset.iter().zip(noise.iter()))
                .map(|((e, xi), (b, n))| e * xi - b + n)
                .collect(),
        ))
    }

    fn true_grad(&self, x: &Vector) -> Option<Vector> {
        Some(Vector::from_vec(
            self.eigs
                .iter()
                .zip(x.iter())
                .zip(self.offset.iter())
                .map(|((e, xi), b)| e * xi - b)
                .collect(),
        ))
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        let quad: f64 = self
            .eigs
            .iter()
            .zip(x.iter())
            .map(|(e, xi)| 0.5 * e * xi * xi)
            .sum();
        Some(quad - self.offset.dot(x))
    }
}

/// Log-spaced eigenvalues in `[lambda_max / kappa, lambda_max]` with
/// `lambda_max = 1`; a single eigenvalue 1 when `dim == 1`.
pub(super) fn log_spaced_eigs(dim: usize, condition_number: f64) -> Vec<f64> {
    if dim == 1 {
        return vec![1.0];
    }
    let lo = (1.0 / condition_number).ln();
    (0..dim)
        .map(|i| (lo - lo * i as f64 / (dim - 1) as f64).exp())
        .collect()
}
