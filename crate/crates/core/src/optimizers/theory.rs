//! Theoretical parameter schedules and the matching convergence bound.
//!
//! The adaptive analysis parameterizes `(k, c, w)` by a free scale `b > 0`,
//! the gradient-norm bound `G` and the smoothness `L`:
//!
//! ```text
//! k = b G^(2/3) / L
//! c = 28 L^2 + G^2 / (7 L k^3)
//! w = max((4 L k)^3, 2 G^2, (c k / (4 L))^3)
//! ```
//!
//! The fixed-noise variant uses the same arithmetic with `sigma` substituted
//! for `G`. [`theory_constants_scale_form`] evaluates the algebraically
//! equivalent closed forms in `b` alone (times powers of the scale constant),
//! kept as an independent route so tests can cross-check the two.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryConstants {
    pub k: f64,
    pub c: f64,
    pub w: f64,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::invalid(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

/// `(k, c, w)` from the scale `b`, the gradient bound (or noise level when
/// running the fixed-noise schedule) and the smoothness constant.
pub fn theory_constants(b: f64, grad_bound: f64, smoothness: f64) -> Result<TheoryConstants> {
    check_positive("b", b)?;
    check_positive("grad bound", grad_bound)?;
    check_positive("smoothness", smoothness)?;
    let (g, l) = (grad_bound, smoothness);
    let k = b * g.powf(2.0 / 3.0) / l;
    let c = 28.0 * l * l + g * g / (7.0 * l * k.powi(3));
    let w = (4.0 * l * k)
        .powi(3)
        .max(2.0 * g * g)
        .max((c * k / (4.0 * l)).powi(3));
    Ok(TheoryConstants { k, c, w })
}

/// Same constants via the closed forms in `b`:
/// `c = L^2 (28 + 1/(7 b^3))` and
/// `w = G^2 max((4b)^3, 2, (28 b + 1/(7 b^2))^3 / 64)`.
pub fn theory_constants_scale_form(
    b: f64,
    grad_bound: f64,
    smoothness: f64,
) -> Result<TheoryConstants> {
    check_positive("b", b)?;
    check_positive("grad bound", grad_bound)?;
    check_positive("smoothness", smoothness)?;
    let (g, l) = (grad_bound, smoothness);
    let k = b * g.powf(2.0 / 3.0) / l;
    let c = l * l * (28.0 + 1.0 / (7.0 * b.powi(3)));
    let w = g
        * g
        * (4.0 * b)
            .powi(3)
            .max(2.0)
            .max((28.0 * b + 1.0 / (7.0 * b * b)).powi(3) / 64.0);
    Ok(TheoryConstants { k, c, w })
}

/// The guaranteed bound on the expected average gradient norm after `T`
/// steps of the adaptive schedule:
///
/// ```text
/// (w^(1/6) sqrt(2M) + 2 M^(3/4)) / sqrt(T) + 2 sigma^(1/3) / T^(1/3)
/// M = (8/k) f_gap + w^(1/3) sigma^2 / (4 L^2 k^2)
///     + (k^2 c^2 / (2 L^2)) ln(T + 2)
/// ```
///
/// `f_gap` is `F(x_1) - inf F`.
pub fn theory_bound(
    constants: &TheoryConstants,
    smoothness: f64,
    sigma: f64,
    f_gap: f64,
    horizon: u64,
) -> Result<f64> {
    check_positive("k", constants.k)?;
    check_positive("c", constants.c)?;
    check_positive("w", constants.w)?;
    check_positive("smoothness", smoothness)?;
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::invalid(format!(
            "sigma must be non-negative, got {sigma}"
        )));
    }
    if !(f_gap >= 0.0 && f_gap.is_finite()) {
        return Err(Error::invalid(format!(
            "f_gap must be non-negative, got {f_gap}"
        )));
    }
    if horizon == 0 {
        return Err(Error::invalid("horizon must be positive"));
    }
    let (k, c, w) = (constants.k, constants.c, constants.w);
    let l = smoothness;
    let t = horizon as f64;
    let m = 8.0 / k * f_gap + w.cbrt() * sigma * sigma / (4.0 * l * l * k * k)
        + k * k * c * c / (2.0 * l * l) * (t + 2.0).ln();
    Ok((w.powf(1.0 / 6.0) * (2.0 * m).sqrt() + 2.0 * m.powf(0.75)) / t.sqrt()
        + 2.0 * sigma.cbrt() / t.cbrt())
}
