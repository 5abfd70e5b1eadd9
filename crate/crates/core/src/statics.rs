//! Time-independent ground-state Casimir-Polder force on an atom in front of
//! a perfectly conducting wall.
//!
//! With `x₀ = 2k₀d` the force is
//!
//! ```text
//! F(d) = −μ²/(12π d⁴) · [4x₀ − 3(x₀² − 2) f(x₀) − x₀(x₀² − 6) g(x₀)]
//! ```
//!
//! The bracket tends to `3π` in the near zone and to `24/x₀` in the far zone,
//! so the force goes as `d⁻⁴` and `d⁻⁵` respectively.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math::{abs, exp, ln};
use crate::specfun;

/// Inputs of the static force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticForceInput {
    d: f64,
    k0: f64,
    mu: f64,
}

impl StaticForceInput {
    /// `d` wall distance, `k0` transition wavenumber, `mu` dipole moment.
    pub fn new(d: f64, k0: f64, mu: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::domain("d", d, "a finite number > 0"));
        }
        if !(k0 > 0.0 && k0.is_finite()) {
            return Err(Error::domain("k0", k0, "a finite number > 0"));
        }
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::domain("mu", mu, "a finite number >= 0"));
        }
        Ok(StaticForceInput { d, k0, mu })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn x0(&self) -> f64 {
        2.0 * self.k0 * self.d
    }
}

/// Static force. Strictly negative whenever `mu > 0`.
pub fn static_force(input: StaticForceInput) -> Result<f64> {
    let reduced = static_force_reduced(input.x0())?;
    let d2 = input.d * input.d;
    Ok(input.mu * input.mu / (12.0 * PI * d2 * d2) * reduced)
}

/// Dimensionless static force `F · 12π d⁴ / μ²` as a function of `x₀ = 2k₀d`.
pub fn static_force_reduced(x0: f64) -> Result<f64> {
    if !(x0 > 0.0 && x0.is_finite()) {
        return Err(Error::domain("x0", x0, "a finite number > 0"));
    }
    let fg = specfun::integrals(x0)?;
    let x2 = x0 * x0;
    let bracket = 4.0 * x0 - 3.0 * (x2 - 2.0) * fg.f - x0 * (x2 - 6.0) * fg.g;
    Ok(-bracket)
}

/// Relative log-step used by [`loglog_slope`].
pub const LOGLOG_STEP: f64 = 1e-3;

/// Local power-law exponent `d ln|F| / d ln d` at `d_center`.
///
/// `force` is evaluated at `d_center · e^{±LOGLOG_STEP}` and must keep one
/// sign over the stencil.
pub fn loglog_slope<F>(mut force: F, d_center: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(d_center > 0.0 && d_center.is_finite()) {
        return Err(Error::domain("d_center", d_center, "a finite number > 0"));
    }
    let lo = force(d_center * exp(-LOGLOG_STEP))?;
    let mid = force(d_center)?;
    let hi = force(d_center * exp(LOGLOG_STEP))?;
    let same_sign = (lo > 0.0 && mid > 0.0 && hi > 0.0) || (lo < 0.0 && mid < 0.0 && hi < 0.0);
    if !same_sign {
        return Err(Error::Evaluation(
            "force changes sign or vanishes across the log-log stencil",
        ));
    }
    Ok((ln(abs(hi)) - ln(abs(lo))) / (2.0 * LOGLOG_STEP))
}
