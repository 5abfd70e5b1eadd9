//! Dynamical Casimir-Polder force between an initially bare ground-state
//! two-level atom and a perfectly conducting wall.
//!
//! The crate is `no_std` (it needs `alloc` for the quadrature oracle) and is
//! organised bottom-up:
//!
//! * [`specfun`]: sine and cosine integrals and the auxiliary functions `f`, `g`.
//! * [`statics`]: the time-independent ground-state force.
//! * [`dynamics`]: the closed-form time-dependent force and energy shift.
//! * [`oracle`]: an independent regularised-quadrature path used to
//!   cross-check [`dynamics`].
//!
//! Units: `c = 1`; lengths and times are measured in the same unit and the
//! transition wavenumber `k0` in its inverse. A negative force is attractive.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod diff;
pub mod dynamics;
mod error;
mod math;
pub mod oracle;
pub mod specfun;
pub mod statics;

pub use dynamics::{
    classify_regime, dynamic_force, energy_shift_closed, AtomWallConfig, ForceResult, GuardBand,
    Regime,
};
pub use error::{Error, Result};
pub use oracle::{
    apply_dm, base_integral, energy_shift_quadrature, force_finite_difference, QuadratureSettings,
};
pub use specfun::{aux_f, aux_g, cosine_integral, sine_integral, EvalPrecision};
pub use statics::{loglog_slope, static_force, static_force_reduced, StaticForceInput};
