//! Baseline optimizers: SGD, SGD with momentum, AdaGrad and Adam.
//!
//! Exact update formulas are documented in `docs/baselines.md`; all four use
//! one fresh sample gradient per step.

use crate::error::{Error, Result};
use crate::oracle::{check_dim, GradOracle};
use crate::rng::RngStream;
use crate::vector::Vector;
use serde::{Deserialize, Serialize};

use super::{Optimizer, StepInfo};

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::invalid(format!(
            "learning rate must be positive, got {eta}"
        )));
    }
    Ok(())
}

fn sample_grad(
    oracle: &dyn GradOracle,
    x: &Vector,
    rng: &mut RngStream,
    step: u64,
) -> Result<Vector> {
    let sample = oracle.draw_sample(rng);
    let g = oracle.stochastic_grad(x, &sample)?;
    if !g.is_finite() {
        return Err(Error::NonFinite {
            step,
            what: "sample gradient",
        });
    }
    Ok(g)
}

fn check_iterate(x: &Vector, step: u64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::NonFinite {
            step,
            what: "iterate",
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// SGD
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SgdParams {
    pub eta: f64,
}

impl SgdParams {
    pub fn new(eta: f64) -> Result<Self> {
        check_eta(eta)?;
        Ok(SgdParams { eta })
    }
}

/// `x_{t+1} = x_t - eta * grad f(x_t, xi_t)` with fixed `eta`.
#[derive(Debug, Clone)]
pub struct Sgd {
    params: SgdParams,
    x: Vector,
    t: u64,
}

impl Sgd {
    pub fn init(x1: &Vector, oracle: &dyn GradOracle, params: SgdParams) -> Result<Self> {
        check_dim(oracle, x1)?;
        Ok(Sgd {
            params,
            x: x1.clone(),
            t: 0,
        })
    }
}

impl Optimizer for Sgd {
    fn iterate(&self) -> &Vector {
        &self.x
    }

    fn direction(&self) -> Option<&Vector> {
        None
    }

    fn pre_step_eta(&self) -> f64 {
        self.params.eta
    }

    fn momentum_weight(&self) -> Option<f64> {
        None
    }

    fn sample_grad_norm(&self) -> Option<f64> {
        None
    }

    fn step(&mut self, oracle: &dyn GradOracle, rng: &mut RngStream) -> Result<StepInfo> {
        let step = self.t + 1;
        let g = sample_grad(oracle, &self.x, rng, step)?;
        self.x.add_scaled(-self.params.eta, &g);
        check_iterate(&self.x, step)?;
        self.t = step;
        Ok(StepInfo {
            eta: self.params.eta,
            momentum: None,
            grad_norm: g.norm(),
        })
    }
}

// ---------------------------------------------------------------------------
// SGD with momentum
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumParams {
    pub eta: f64,
    /// Exponential-average weight on the fresh gradient, in [0, 1].
    pub a: f64,
}

impl MomentumParams {
    pub fn new(eta: f64, a: f64) -> Result<Self> {
        check_eta(eta)?;
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::invalid(format!(
                "momentum weight must be in [0, 1], got {a}"
            )));
        }
        Ok(MomentumParams { eta, a })
    }
}

/// `d_t = (1 - a) d_{t-1} + a grad f(x_t, xi_t)`, `x_{t+1} = x_t - eta d_t`,
/// with `d_0 = 0`.
#[derive(Debug, Clone)]
pub struct Momentum {
    params: MomentumParams,
    x: Vector,
    d: Vector,
    t: u64,
}

impl Momentum {
    pub fn init(x1: &Vector, oracle: &dyn GradOracle, params: MomentumParams) -> Result<Self> {
        check_dim(oracle, x1)?;
        Ok(Momentum {
            params,
            x: x1.clone(),
            d: Vector::zeros(x1.dim()),
            t: 0,
        })
    }
}

impl Optimizer for Momentum {
    fn iterate(&self) -> &Vector {
        &self.x
    }

    fn direction(&self) -> Option<&Vector> {
        Some(&self.d)
    }

    fn pre_step_eta(&self) -> f64 {
        self.params.eta
    }

    fn momentum_weight(&self) -> Option<f64> {
        Some(self.params.a)
    }

    fn sample_grad_norm(&self) -> Option<f64> {
        None
    }

    fn step(&mut self, oracle: &dyn GradOracle, rng: &mut RngStream) -> Result<StepInfo> {
        let step = self.t + 1;
        let g = sample_grad(oracle, &self.x, rng, step)?;
        self.d.scale(1.0 - self.params.a);
        self.d.add_scaled(self.params.a, &g);
        self.x.add_scaled(-self.params.eta, &self.d);
        check_iterate(&self.x, step)?;
        self.t = step;
        Ok(StepInfo {
            eta: self.params.eta,
            momentum: Some(self.params.a),
            grad_norm: g.norm(),
        })
    }
}

// ---------------------------------------------------------------------------
// AdaGrad
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdagradParams {
    pub eta: f64,
    /// Stabilizer added to the per-coordinate root accumulator.
    pub eps: f64,
}

impl AdagradParams {
    pub fn new(eta: f64, eps: f64) -> Result<Self> {
        check_eta(eta)?;
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(Error::invalid(format!(
                "adagrad eps must be non-negative, got {eps}"
            )));
        }
        Ok(AdagradParams { eta, eps })
    }
}

/// Per-coordinate `s_i += g_i^2`, `x_i -= eta * g_i / (sqrt(s_i) + eps)`.
#[derive(Debug, Clone)]
pub struct Adagrad {
    params: AdagradParams,
    x: Vector,
    accum: Vector,
    t: u64,
}

impl Adagrad {
    pub fn init(x1: &Vector, oracle: &dyn GradOracle, params: AdagradParams) -> Result<Self> {
        check_dim(oracle, x1)?;
        Ok(Adagrad {
            params,
            x: x1.clone(),
            accum: Vector::zeros(x1.dim()),
            t: 0,
        })
    }
}

impl Optimizer for Adagrad {
    fn iterate(&self) -> &Vector {
        &self.x
    }

    fn direction(&self) -> Option<&Vector> {
        None
    }

    fn pre_step_eta(&self) -> f64 {
        self.params.eta
    }

    fn momentum_weight(&self) -> Option<f64> {
        None
    }

    fn sample_grad_norm(&self) -> Option<f64> {
        None
    }

    fn step(&mut self, oracle: &dyn GradOracle, rng: &mut RngStream) -> Result<StepInfo> {
        let step = self.t + 1;
        let g = sample_grad(oracle, &self.x, rng, step)?;
        for i in 0..g.dim() {
            self.accum[i] += g[i] * g[i];
            self.x[i] -= self.params.eta * g[i] / (self.accum[i].sqrt() + self.params.eps);
        }
        check_iterate(&self.x, step)?;
        self.t = step;
        Ok(StepInfo {
            eta: self.params.eta,
            momentum: None,
            grad_norm: g.norm(),
        })
    }
}

// ---------------------------------------------------------------------------
// Adam
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdamParams {
    pub eta: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl AdamParams {
    pub fn new(eta: f64, beta1: f64, beta2: f64, eps: f64) -> Result<Self> {
        check_eta(eta)?;
        for (name, b) in [("beta1", beta1), ("beta2", beta2)] {
            if !(0.0..1.0).contains(&b) {
                return Err(Error::invalid(format!(
                    "adam {name} must be in [0, 1), got {b}"
                )));
            }
        }
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(Error::invalid(format!(
                "adam eps must be non-negative, got {eps}"
            )));
        }
        Ok(AdamParams {
            eta,
            beta1,
            beta2,
            eps,
        })
    }
}

/// Bias-corrected first/second moment updates:
/// `m = b1 m + (1-b1) g`, `v = b2 v + (1-b2) g^2`,
/// `x_i -= eta * (m_i / (1-b1^t)) / (sqrt(v_i / (1-b2^t)) + eps)`.
#[derive(Debug, Clone)]
pub struct Adam {
    params: AdamParams,
    x: Vector,
    m: Vector,
    v: Vector,
    t: u64,
}

impl Adam {
    pub fn init(x1: &Vector, oracle: &dyn GradOracle, params: AdamParams) -> Result<Self> {
        check_dim(oracle, x1)?;
        Ok(Adam {
            params,
            x: x1.clone(),
            m: Vector::zeros(x1.dim()),
            v: Vector::zeros(x1.dim()),
            t: 0,
        })
    }
}

impl Optimizer for Adam {
    fn iterate(&self) -> &Vector {
        &self.x
    }

    fn direction(&self) -> Option<&Vector> {
        None
    }

    fn pre_step_eta(&self) -> f64 {
        self.params.eta
    }

    fn momentum_weight(&self) -> Option<f64> {
        None
    }

    fn sample_grad_norm(&self) -> Option<f64> {
        None
    }

    fn step(&mut self, oracle: &dyn GradOracle, rng: &mut RngStream) -> Result<StepInfo> {
        let step = self.t + 1;
        let g = sample_grad(oracle, &self.x, rng, step)?;
        let p = self.params;
        let bc1 = 1.0 - p.beta1.powi(step as i32);
        let bc2 = 1.0 - p.beta2.powi(step as i32);
        for i in 0..g.dim() {
            self.m[i] = p.beta1 * self.m[i] + (1.0 - p.beta1) * g[i];
            self.v[i] = p.beta2 * self.v[i] + (1.0 - p.beta2) * g[i] * g[i];
            let m_hat = self.m[i] / bc1;
            let v_hat = self.v[i] / bc2;
            self.x[i] -= p.eta * m_hat / (v_hat.sqrt() + p.eps);
        }
        check_iterate(&self.x, step)?;
        self.t = step;
        Ok(StepInfo {
            eta: p.eta,
            momentum: None,
            grad_norm: g.norm(),
        })
    }
}
