//! The STORM optimizer: stochastic recursive momentum.
//!
//! Each step performs, in order,
//!
//! ```text
//! eta_t   = k / (w + S_t)^(1/3)          S_t = sum of squared sample-gradient
//! x_{t+1} = x_t - eta_t * d_t                  norms (adaptive) or sigma^2 * t
//! a_{t+1} = c * eta_t^2                        (fixed-noise schedule)
//! draw xi_{t+1}
//! d_{t+1} = grad f(x_{t+1}, xi_{t+1})
//!           + (1 - a_{t+1}) * (d_t - grad f(x_t, xi_{t+1}))
//! ```
//!
//! Both gradients inside one step use the same sample, which is what makes
//! the correction term variance-reducing. Exactly two oracle gradients are
//! evaluated per step; the fresh-point gradient also supplies the squared
//! norm accumulated into the step-size schedule.

use crate::error::{Error, Result};
use crate::oracle::{check_dim, GradOracle, Sample};
use crate::rng::RngStream;
use crate::vector::Vector;
use serde::{Deserialize, Serialize};

use super::{Optimizer, StepInfo};

/// Step-size schedule variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StormMode {
    /// Accumulate realized squared gradient norms (adaptive schedule).
    Adaptive,
    /// Accumulate `sigma^2` per step (deterministic schedule for problems
    /// without a gradient-norm bound; requires `sigma > 0`).
    FixedSigma { sigma: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StormParams {
    pub k: f64,
    pub w: f64,
    pub c: f64,
    pub mode: StormMode,
    /// Clamp the momentum weight `a = c * eta^2` into [0, 1]. With practical
    /// parameters `c * eta^2` can exceed 1 early, which would flip the sign
    /// of the correction term; disable only for schedule-exact runs where
    /// `w` already guarantees `a <= 1`.
    pub clamp_a: bool,
}

impl StormParams {
    pub fn new(k: f64, w: f64, c: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::invalid(format!("storm k must be positive, got {k}")));
        }
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::invalid(format!("storm w must be positive, got {w}")));
        }
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::invalid(format!(
                "storm c must be non-negative, got {c}"
            )));
        }
        Ok(StormParams {
            k,
            w,
            c,
            mode: StormMode::Adaptive,
            clamp_a: true,
        })
    }

    pub fn with_mode(mut self, mode: StormMode) -> Result<Self> {
        if let StormMode::FixedSigma { sigma } = mode {
            if !(sigma > 0.0 && sigma.is_finite()) {
                return Err(Error::invalid(format!(
                    "fixed-sigma schedule needs sigma > 0, got {sigma}"
                )));
            }
        }
        self.mode = mode;
        Ok(self)
    }

    pub fn with_clamp(mut self, clamp_a: bool) -> Self {
        self.clamp_a = clamp_a;
        self
    }

    /// The pre-step rate `eta_0 = k / w^(1/3)`.
    pub fn eta0(&self) -> f64 {
        self.k / self.w.cbrt()
    }
}

/// Everything one step computed; consumed by diagnostics and trace recording.
#[derive(Debug, Clone)]
pub struct StormStepDetail {
    /// 1-based index `t` of the completed step.
    pub step: u64,
    /// `eta_t`, the rate this step moved with.
    pub eta: f64,
    /// `a_{t+1}` used in the direction update (after clamping, if enabled).
    pub a: f64,
    /// `G_{t+1} = ||grad f(x_{t+1}, xi_{t+1})||`.
    pub grad_norm: f64,
    /// The sample `xi_{t+1}` shared by both gradient evaluations.
    pub sample: Sample,
    /// `x_t` (the point stepped from).
    pub x_prev: Vector,
    /// `d_t` (the direction stepped with).
    pub d_prev: Vector,
    /// `grad f(x_{t+1}, xi_{t+1})`.
    pub g_new: Vector,
    /// `grad f(x_t, xi_{t+1})`.
    pub g_old: Vector,
}

/// Optimizer state after `t` completed steps: the iterate `x_{t+1}`, the
/// direction `d_{t+1}`, the schedule accumulator, and the most recent rate
/// and momentum weight.
#[derive(Debug, Clone)]
pub struct StormState {
    params: StormParams,
    t: u64,
    x: Vector,
    d: Vector,
    /// Squared-norm sum through step `t` (the amount the *next* step's rate
    /// will be computed from is this plus `pending_g_sq`).
    sum_g_sq: f64,
    /// Squared norm of the newest sample gradient, not yet folded into
    /// `sum_g_sq`; folded at the start of the next step.
    pending_g_sq: f64,
    /// Norm of the newest sample gradient (`G_{t+1}`).
    g_last: f64,
    /// `eta_t` of the most recent step; `eta_0 = k / w^(1/3)` after init.
    eta: f64,
    /// Momentum weight attached to the current direction (`a_{t+1}`); 1
    /// after init, where the direction is a fresh gradient.
    a_last: f64,
}

/// Initialize at `x1`: draws `xi_1` and sets `d_1 = grad f(x_1, xi_1)`.
pub fn storm_init(
    x1: &Vector,
    oracle: &dyn GradOracle,
    params: StormParams,
    rng: &mut RngStream,
) -> Result<StormState> {
    check_dim(oracle, x1)?;
    let sample = oracle.draw_sample(rng);
    let d = oracle.stochastic_grad(x1, &sample)?;
    if !d.is_finite() || !x1.is_finite() {
        return Err(Error::NonFinite {
            step: 0,
            what: "initial gradient",
        });
    }
    let g1 = d.norm();
    Ok(StormState {
        eta: params.eta0(),
        params,
        t: 0,
        x: x1.clone(),
        d,
        sum_g_sq: 0.0,
        pending_g_sq: g1 * g1,
        g_last: g1,
        a_last: 1.0,
    })
}

impl StormState {
    pub fn params(&self) -> &StormParams {
        &self.params
    }

    /// Completed step count.
    pub fn step_count(&self) -> u64 {
        self.t
    }

    pub fn x(&self) -> &Vector {
        &self.x
    }

    pub fn d(&self) -> &Vector {
        &self.d
    }

    /// `eta_t` of the most recent step (`eta_0` before the first).
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// The accumulator the most recent rate was computed from.
    pub fn sum_g_sq(&self) -> f64 {
        self.sum_g_sq
    }

    /// Momentum weight attached to the current direction.
    pub fn a_last(&self) -> f64 {
        self.a_last
    }

    /// Norm of the newest sample gradient `||grad f(x_{t+1}, xi_{t+1})||`.
    pub fn g_last(&self) -> f64 {
        self.g_last
    }

    /// Advance one step, returning everything the step computed.
    pub fn step_detailed(
        &mut self,
        oracle: &dyn GradOracle,
        rng: &mut RngStream,
    ) -> Result<StormStepDetail> {
        let step = self.t + 1;
        self.sum_g_sq += match self.params.mode {
            StormMode::Adaptive => self.pending_g_sq,
            StormMode::FixedSigma { sigma } => sigma * sigma,
        };
        let eta = self.params.k / (self.params.w + self.sum_g_sq).cbrt();
        let a_raw = self.params.c * eta * eta;
        let a = if self.params.clamp_a {
            a_raw.min(1.0)
        } else {
            a_raw
        };

        let x_prev = self.x.clone();
        let d_prev = self.d.clone();

        let mut x_new = x_prev.clone();
        x_new.add_scaled(-eta, &d_prev);

        let sample = oracle.draw_sample(rng);
        let g_new = oracle.stochastic_grad(&x_new, &sample)?;
        let g_old = oracle.stochastic_grad(&x_prev, &sample)?;
        let grad_norm = g_new.norm();

        // d_{t+1} = g_new + (1 - a) * (d_prev - g_old)
        let d_new = Vector::from_vec(
            g_new
                .iter()
                .zip(d_prev.iter().zip(g_old.iter()))
                .map(|(gn, (dp, go))| gn + (1.0 - a) * (dp - go))
                .collect(),
        );

        if !x_new.is_finite() {
            return Err(Error::NonFinite {
                step,
                what: "iterate",
            });
        }
        if !d_new.is_finite() || !grad_norm.is_finite() {
            return Err(Error::NonFinite {
                step,
                what: "direction",
            });
        }

        self.x = x_new;
        self.d = d_new;
        self.pending_g_sq = grad_norm * grad_norm;
        self.g_last = grad_norm;
        self.eta = eta;
        self.a_last = a;
        self.t = step;

        Ok(StormStepDetail {
            step,
            eta,
            a,
            grad_norm,
            sample,
            x_prev,
            d_prev,
            g_new,
            g_old,
        })
    }
}

impl Optimizer for StormState {
    fn iterate(&self) -> &Vector {
        &self.x
    }

    fn direction(&self) -> Option<&Vector> {
        Some(&self.d)
    }

    fn pre_step_eta(&self) -> f64 {
        self.eta
    }

    fn momentum_weight(&self) -> Option<f64> {
        Some(self.a_last)
    }

    fn sample_grad_norm(&self) -> Option<f64> {
        Some(self.g_last)
    }

    fn step(&mut self, oracle: &dyn GradOracle, rng: &mut RngStream) -> Result<StepInfo> {
        let detail = self.step_detailed(oracle, rng)?;
        Ok(StepInfo {
            eta: detail.eta,
            momentum: Some(detail.a),
            grad_norm: detail.grad_norm,
        })
    }
}
