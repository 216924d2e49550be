//! Finite-sum logistic regression with index sampling.
//!
//! `f(x, i) = log(1 + exp(-y_i a_i . x))`, `F` the average over the `n`
//! examples. Sampling a uniform index makes the oracle exactly unbiased.
//! Constants are global and exact: each per-example gradient has norm below
//! `||a_i||` (the logistic derivative has magnitude below 1), and curvature
//! at most `||a_i||^2 / 4`.

use crate::error::{Error, Result};
use crate::oracle::{check_dim, GradOracle, Sample};
use crate::rng::RngStream;
use crate::vector::Vector;

#[derive(Debug, Clone)]
pub struct LogisticFiniteSum {
    features: Vec<Vector>,
    labels: Vec<f64>,
    dim: usize,
    lipschitz: f64,
    smoothness: f64,
    /// Noise second moment at the origin, by exact enumeration. A point
    /// estimate (the logistic noise level varies with x), not a global
    /// bound.
    sigma_sq_at_origin: f64,
}

/// `log(1 + exp(z))`, overflow-safe.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Logistic sigmoid `1 / (1 + exp(-z))`.
fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl LogisticFiniteSum {
    pub fn new(features: Vec<Vector>, labels: Vec<f64>) -> Result<Self> {
        if features.is_empty() || features.len() != labels.len() {
            return Err(Error::invalid("features/labels must be non-empty and match"));
        }
        let dim = features[0].dim();
        if features.iter().any(|a| a.dim() != dim) {
            return Err(Error::invalid("feature rows must share one dimension"));
        }
        if labels.iter().any(|&y| y != 1.0 && y != -1.0) {
            return Err(Error::invalid("labels must be +1 or -1"));
        }
        let max_row_norm = features.iter().map(Vector::norm).fold(0.0, f64::max);
        let mut this = LogisticFiniteSum {
            features,
            labels,
            dim,
            lipschitz: max_row_norm,
            smoothness: max_row_norm * max_row_norm / 4.0,
            sigma_sq_at_origin: 0.0,
        };
        this.sigma_sq_at_origin = this.exact_noise_second_moment(&Vector::zeros(dim));
        Ok(this)
    }

    pub fn n_examples(&self) -> usize {
        self.features.len()
    }

    /// Per-example gradient `-y_i a_i sigmoid(-y_i a_i . x)`.
    fn example_grad(&self, x: &Vector, i: usize) -> Vector {
        let margin = self.labels[i] * self.features[i].dot(x);
        let factor = -self.labels[i] * sigmoid(-margin);
        &self.features[i] * factor
    }

    /// `(1/n) sum_i ||grad f(x, i) - grad F(x)||^2` by full enumeration.
    pub fn exact_noise_second_moment(&self, x: &Vector) -> f64 {
        let full = self.true_grad(x).unwrap();
        let n = self.n_examples() as f64;
        (0..self.n_examples())
            .map(|i| self.example_grad(x, i).dist_sq(&full))
            .sum::<f64>()
            / n
    }
}

impl GradOracle for LogisticFiniteSum {
    fn dim(&self) -> usize {
        self.dim
    }

    fn smoothness(&self) -> f64 {
        self.smoothness
    }

    fn lipschitz_bound(&self) -> Option<f64> {
        Some(self.lipschitz)
    }

    fn noise_bound(&self) -> f64 {
        self.sigma_sq_at_origin.sqrt()
    }

    fn optimum_value(&self) -> Option<f64> {
        None
    }

    fn draw_sample(&self, rng: &mut RngStream) -> Sample {
        Sample::Index(rng.index(self.n_examples()))
    }

    fn stochastic_grad(&self, x: &Vector, sample: &Sample) -> Result<Vector> {
        check_dim(self, x)?;
        let &i = match sample {
            Sample::Index(i) => i,
            Sample::Noise(_) => return Err(Error::SampleKind { expected: "index" }),
        };
        if i >= self.n_examples() {
            return Err(Error::invalid(format!("sample index {i} out of range")));
        }
        Ok(self.example_grad(x, i))
    }

    fn true_grad(&self, x: &Vector) -> Option<Vector> {
        let mut acc = Vector::zeros(self.dim);
        for i in 0..self.n_examples() {
            acc.add_scaled(1.0, &self.example_grad(x, i));
        }
        acc.scale(1.0 / self.n_examples() as f64);
        Some(acc)
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        let n = self.n_examples() as f64;
        Some(
            (0..self.n_examples())
                .map(|i| softplus(-self.labels[i] * self.features[i].dot(x)))
                .sum::<f64>()
                / n,
        )
    }
}
