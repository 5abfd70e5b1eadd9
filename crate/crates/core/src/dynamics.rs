//! Closed-form time-dependent force on an initially bare ground-state atom.
//!
//! Everything is expressed through `x₀ = 2k₀d` and `a = ct/2d` (with
//! `c = 1`). `a = 1` is the back-reaction time `t = 2d`, at which both the
//! energy shift and the force diverge; configurations inside a configurable
//! guard band around it are refused rather than regularised.
//!
//! The force is `F = −μ²/(12π d⁴) · R(x₀, a)` with
//!
//! ```text
//! R = 4x₀ + 2x₀ (a²−2) cos θ / (a²−1)²
//!     − 2a [(2q−9) − 4a²(q−2) + a⁴(2q−3)] sin θ / (1−a²)³
//!     + [Ci(x₀(1+a)) − 2Ci(x₀) + Ci(x₀|1−a|)] · [x₀ cos x₀ (3−2q) − 3(1−2q) sin x₀]
//!     + [Si(x₀(1+a)) − 2Si(x₀) + Si(x₀(1−a)) + lπ] · [3(1−2q) cos x₀ + x₀ (3−2q) sin x₀]
//! ```
//!
//! where `θ = x₀ a = k₀t`, `q = x₀²/4` and `l` is 0 before and 1 after the
//! back-reaction time.
//!
//! The energy shift is obtained independently: the integral
//! `I(m) = ∫₀^∞ sin(mx)/(x+x₀) (1 − cos[a(x+x₀)]) dx` is reduced to sine and
//! cosine integrals, differentiated twice in `m` analytically, and combined as
//! `ΔE = −μ²/(12π d³) [2I − 2I′ + I″]` at `m = 1`.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math::{abs, sin, sin_cos};
use crate::specfun::{self, SineCosineIntegrals};

/// Below this `a` the `8k₀d` and `cos(k₀t)` terms are combined over a common
/// denominator; they cancel to leading order as `t → 0`.
const FUSED_RATIONAL_BELOW: f64 = 0.05;

/// Half-width of the excluded window `|a − 1| ≤ width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuardBand(f64);

impl GuardBand {
    pub fn new(width: f64) -> Result<Self> {
        if width > 0.0 && width < 0.5 {
            Ok(GuardBand(width))
        } else {
            Err(Error::domain("guard_band", width, "in (0, 0.5)"))
        }
    }

    pub fn width(&self) -> f64 {
        self.0
    }
}

impl Default for GuardBand {
    fn default() -> Self {
        GuardBand(1e-3)
    }
}

/// Atom-wall distance `d`, elapsed time `t`, transition wavenumber `k0`, and
/// dipole moment `mu`, together with the derived `x0 = 2 k0 d` and `a = t/2d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomWallConfig {
    d: f64,
    t: f64,
    k0: f64,
    mu: f64,
    x0: f64,
    a: f64,
}

impl AtomWallConfig {
    pub fn new(d: f64, t: f64, k0: f64, mu: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::domain("d", d, "a finite number > 0"));
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::domain("t", t, "a finite number >= 0"));
        }
        if !(k0 > 0.0 && k0.is_finite()) {
            return Err(Error::domain("k0", k0, "a finite number > 0"));
        }
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::domain("mu", mu, "a finite number >= 0"));
        }
        Ok(AtomWallConfig {
            d,
            t,
            k0,
            mu,
            x0: 2.0 * k0 * d,
            a: t / (2.0 * d),
        })
    }

    /// Same time, wavenumber and dipole at another distance.
    pub fn with_distance(&self, d: f64) -> Result<Self> {
        AtomWallConfig::new(d, self.t, self.k0, self.mu)
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

/// Position of a time point relative to the back-reaction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `a < 1 − guard`, branch index `l = 0`.
    PreBackReaction,
    /// `a > 1 + guard`, branch index `l = 1`.
    PostBackReaction,
    /// `|a − 1| ≤ guard`; no value is reported.
    SingularBand,
}

impl Regime {
    /// Branch index multiplying `π` in the sine-integral bracket.
    pub fn l(&self) -> Option<u8> {
        match self {
            Regime::PreBackReaction => Some(0),
            Regime::PostBackReaction => Some(1),
            Regime::SingularBand => None,
        }
    }

    /// Short tag used in serialized output.
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::PreBackReaction => "pre",
            Regime::PostBackReaction => "post",
            Regime::SingularBand => "singular",
        }
    }
}

pub fn classify_regime(config: &AtomWallConfig, guard: GuardBand) -> Regime {
    let a = config.a;
    if a < 1.0 - guard.0 {
        Regime::PreBackReaction
    } else if a > 1.0 + guard.0 {
        Regime::PostBackReaction
    } else {
        Regime::SingularBand
    }
}

fn checked_regime(config: &AtomWallConfig, guard: GuardBand) -> Result<Regime> {
    match classify_regime(config, guard) {
        Regime::SingularBand => Err(Error::Singular {
            a: config.a,
            distance: abs(config.a - 1.0),
            guard: guard.0,
        }),
        regime => Ok(regime),
    }
}

/// Force evaluated at one configuration. Never produced inside the guard band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    /// Signed force; negative is attractive.
    pub force: f64,
    /// `force · 12π d⁴ / μ²`, a function of `x0` and `a` only.
    pub force_reduced: f64,
    pub regime: Regime,
    pub config: AtomWallConfig,
}

/// Time-dependent force from the closed-form expression.
pub fn dynamic_force(config: &AtomWallConfig, guard: GuardBand) -> Result<ForceResult> {
    let regime = checked_regime(config, guard)?;
    let post = regime == Regime::PostBackReaction;
    let bracket = force_bracket(config.x0, config.a, post)?;
    let d2 = config.d * config.d;
    let scale = config.mu * config.mu / (12.0 * PI * d2 * d2);
    Ok(ForceResult {
        force: -scale * bracket,
        force_reduced: -bracket,
        regime,
        config: *config,
    })
}

/// The bracket `R(x₀, a)`; `post` selects `l = 1`.
pub(crate) fn force_bracket(x0: f64, a: f64, post: bool) -> Result<f64> {
    if a == 0.0 {
        // Every term cancels identically at the initial time.
        return Ok(0.0);
    }
    let q = 0.25 * x0 * x0;
    let a2 = a * a;
    let theta = x0 * a;
    let (sin_theta, cos_theta) = sin_cos(theta);

    let rational_cos = if a < FUSED_RATIONAL_BELOW {
        let half = sin(0.5 * theta);
        let numerator = 2.0 * a2 * a2 + a2 * (cos_theta - 4.0) + 4.0 * half * half;
        let denom = a2 - 1.0;
        2.0 * x0 * numerator / (denom * denom)
    } else {
        let denom = a2 - 1.0;
        4.0 * x0 + 2.0 * x0 * (a2 - 2.0) * cos_theta / (denom * denom)
    };

    let one_minus = 1.0 - a2;
    let polynomial = (2.0 * q - 9.0) - 4.0 * a2 * (q - 2.0) + a2 * a2 * (2.0 * q - 3.0);
    let rational_sin = -2.0 * a * polynomial * sin_theta / (one_minus * one_minus * one_minus);

    let near = specfun::integrals(x0)?;
    let sum = specfun::integrals(x0 * (1.0 + a))?;
    let diff = specfun::integrals(x0 * abs(1.0 - a))?;

    let (sin_x0, cos_x0) = sin_cos(x0);
    let ci_coeff = x0 * cos_x0 * (3.0 - 2.0 * q) - 3.0 * (1.0 - 2.0 * q) * sin_x0;
    let si_coeff = 3.0 * (1.0 - 2.0 * q) * cos_x0 + x0 * (3.0 - 2.0 * q) * sin_x0;

    let ci_bracket = sum.ci - 2.0 * near.ci + diff.ci;
    // Si(x₀(1+a)) − 2Si(x₀) + Si(x₀(1−a)) + lπ, with every Si written as
    // ±(π/2 − (π/2 − Si)) so the π/2 pieces and lπ cancel exactly.
    let branch = if post { 1.0 } else { -1.0 };
    let si_bracket = 2.0 * near.si_complement - sum.si_complement + branch * diff.si_complement;

    Ok(rational_cos + rational_sin + ci_bracket * ci_coeff + si_bracket * si_coeff)
}

/// Energy shift `ΔE(d, t)` by analytic reduction to sine and cosine integrals.
pub fn energy_shift_closed(config: &AtomWallConfig, guard: GuardBand) -> Result<f64> {
    checked_regime(config, guard)?;
    let bracket = energy_bracket(config.x0, config.a)?;
    let d = config.d;
    Ok(-config.mu * config.mu / (12.0 * PI * d * d * d) * bracket)
}

/// `2I − 2I′ + I″` at `m = 1`.
pub(crate) fn energy_bracket(x0: f64, a: f64) -> Result<f64> {
    if a == 0.0 {
        return Ok(0.0);
    }
    let (sin_x0, cos_x0) = sin_cos(x0);
    let carrier = Carrier { x0, sin_x0, cos_x0 };
    let centre = carrier.component(1.0)?;
    let upper = carrier.component(1.0 + a)?;
    let lower = carrier.component(1.0 - a)?;
    let i = [0, 1, 2].map(|n| centre[n] - 0.5 * upper[n] - 0.5 * lower[n]);
    Ok(2.0 * i[0] - 2.0 * i[1] + i[2])
}

/// `sin(m x₀)`, `cos(m x₀)` at `m = 1`, shared by every frequency component.
struct Carrier {
    x0: f64,
    sin_x0: f64,
    cos_x0: f64,
}

impl Carrier {
    /// `J(m) = cos(m x₀) S(k) − sin(m x₀) C(k)` and its first two
    /// `m`-derivatives at `m = 1`, for a frequency `k = m + const`.
    ///
    /// `S(k) = ∫_{x₀}^∞ sin(ku)/u du = sgn(k)(π/2 − Si(|k|x₀))` and
    /// `C(k) = ∫_{x₀}^∞ cos(ku)/u du = −Ci(|k|x₀)`.
    fn component(&self, k: f64) -> Result<[f64; 3]> {
        let x0 = self.x0;
        let z = abs(k) * x0;
        let SineCosineIntegrals {
            ci, si_complement, ..
        } = specfun::integrals(z)?;
        let sign = if k < 0.0 { -1.0 } else { 1.0 };
        let s0 = sign * si_complement;
        let c0 = -ci;

        let (sin_kx, cos_kx) = sin_cos(k * x0);
        let s1 = -sin_kx / k;
        let c1 = -cos_kx / k;
        let s2 = -x0 * cos_kx / k + sin_kx / (k * k);
        let c2 = x0 * sin_kx / k + cos_kx / (k * k);

        let (s, c) = (self.sin_x0, self.cos_x0);
        let j0 = c * s0 - s * c0;
        let j1 = -x0 * s * s0 + c * s1 - x0 * c * c0 - s * c1;
        let j2 = -x0 * x0 * c * s0 - 2.0 * x0 * s * s1 + c * s2 + x0 * x0 * s * c0
            - 2.0 * x0 * c * c1
            - s * c2;
        Ok([j0, j1, j2])
    }
}
