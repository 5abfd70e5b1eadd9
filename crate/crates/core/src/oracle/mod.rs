//! Independent numerical route to the energy shift and the force.
//!
//! The energy shift is `ΔE = D_m I(m)` at `m = 1` with
//!
//! ```text
//! I(m) = ∫₀^∞ sin(mx)/(x+x₀) · (1 − cos[a(x+x₀)]) dx
//! D_m  = −μ²/(4π d³) · [2 − 2∂/∂m + ∂²/∂m²]
//! ```
//!
//! `I(m)` is only conditionally convergent. It is evaluated in the Abel
//! sense: the integrand is damped by `e^{−εx}` for a decreasing list of
//! regulators, each damped integral is computed by Gauss-Kronrod panels, and
//! the sequence is extrapolated polynomially to `ε = 0`. The `m`-derivatives
//! are taken with five-point stencils and the force with a central difference
//! in `d`. Nothing here calls into the closed-form energy of
//! [`crate::dynamics`].
//!
//! The `μ²` of `D_m` is the squared dipole along one axis; for the isotropic
//! atom used throughout the crate it is a third of the full `μ²`.

mod extrapolate;
mod quadrature;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::diff::{five_point, negative_gradient};
use crate::dynamics::{classify_regime, AtomWallConfig, GuardBand, Regime};
use crate::error::{Error, Result};
use crate::math::{abs, cos, exp, sin_cos};
use quadrature::{panel_nodes, rescaled_error, CompensatedSum};

/// Largest `m` the panel layout is built for.
const M_MAX: f64 = 1.1;
const M_MIN: f64 = 0.9;
/// Damped integrands are dropped once `e^{−εx} < e^{−45}`.
const DAMPING_CUTOFF: f64 = 45.0;
const MAX_BISECTIONS: u32 = 24;
/// Default truncation: this many unit-frequency periods past `x₀`.
pub const DEFAULT_TRUNCATION_PERIODS: f64 = 1e4;
/// Relative step of the distance stencil in [`force_finite_difference`].
pub const FORCE_REL_STEP: f64 = 1e-4;

/// Tolerances and discretisation of the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSettings {
    abs_tol: f64,
    truncation_u_max: Option<f64>,
    regulator_epsilons: Vec<f64>,
    m_stencil_h: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            abs_tol: 1e-9,
            truncation_u_max: None,
            regulator_epsilons: vec![8e-3, 4e-3, 2e-3, 1e-3, 5e-4],
            m_stencil_h: 1e-4,
        }
    }
}

impl QuadratureSettings {
    /// `truncation_u_max = None` means `x₀ + 2π · 10⁴`.
    pub fn new(
        abs_tol: f64,
        truncation_u_max: Option<f64>,
        regulator_epsilons: Vec<f64>,
        m_stencil_h: f64,
    ) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::domain("abs_tol", abs_tol, "> 0"));
        }
        if let Some(u) = truncation_u_max {
            if !(u > 0.0 && u.is_finite()) {
                return Err(Error::domain("truncation_u_max", u, "> 0"));
            }
        }
        if regulator_epsilons.len() < 2 {
            return Err(Error::domain(
                "regulator_epsilons.len()",
                regulator_epsilons.len() as f64,
                "at least two regulators",
            ));
        }
        for (i, &e) in regulator_epsilons.iter().enumerate() {
            if !(e > 0.0 && e.is_finite()) {
                return Err(Error::domain("regulator epsilon", e, "> 0"));
            }
            if i > 0 && e >= regulator_epsilons[i - 1] {
                return Err(Error::domain(
                    "regulator epsilon",
                    e,
                    "strictly decreasing regulators",
                ));
            }
        }
        if !(m_stencil_h > 0.0 && m_stencil_h < 1e-2) {
            return Err(Error::domain("m_stencil_h", m_stencil_h, "in (0, 1e-2)"));
        }
        Ok(QuadratureSettings {
            abs_tol,
            truncation_u_max,
            regulator_epsilons,
            m_stencil_h,
        })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn truncation_u_max(&self) -> Option<f64> {
        self.truncation_u_max
    }

    pub fn regulator_epsilons(&self) -> &[f64] {
        &self.regulator_epsilons
    }

    pub fn m_stencil_h(&self) -> f64 {
        self.m_stencil_h
    }

    /// Upper limit in `u = x + x₀` actually used at a given `x₀`.
    pub fn truncation_for(&self, x0: f64) -> f64 {
        self.truncation_u_max
            .unwrap_or(x0 + 2.0 * PI * DEFAULT_TRUNCATION_PERIODS)
    }

    pub fn with_truncation(self, truncation_u_max: Option<f64>) -> Result<Self> {
        Self::new(
            self.abs_tol,
            truncation_u_max,
            self.regulator_epsilons,
            self.m_stencil_h,
        )
    }

    pub fn with_regulators(self, regulator_epsilons: Vec<f64>) -> Result<Self> {
        Self::new(
            self.abs_tol,
            self.truncation_u_max,
            regulator_epsilons,
            self.m_stencil_h,
        )
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Result<Self> {
        Self::new(
            abs_tol,
            self.truncation_u_max,
            self.regulator_epsilons,
            self.m_stencil_h,
        )
    }
}

/// A function of the auxiliary parameter `m` that [`apply_dm`] can
/// differentiate. Closures `Fn(f64) -> Result<f64>` implement it.
pub trait ParametricIntegral {
    fn at(&self, m: f64) -> Result<f64>;

    /// Values at several `m` at once; implementors may share work.
    fn at_many(&self, ms: &[f64]) -> Result<Vec<f64>> {
        ms.iter().map(|&m| self.at(m)).collect()
    }
}

impl<F> ParametricIntegral for F
where
    F: Fn(f64) -> Result<f64>,
{
    fn at(&self, m: f64) -> Result<f64> {
        self(m)
    }
}

/// `I(m)` at fixed `x₀` and `a`, evaluated by regularised quadrature.
#[derive(Debug, Clone, Copy)]
pub struct BaseIntegral<'s> {
    x0: f64,
    a: f64,
    settings: &'s QuadratureSettings,
}

impl<'s> BaseIntegral<'s> {
    pub fn new(x0: f64, a: f64, settings: &'s QuadratureSettings) -> Result<Self> {
        if !(x0 > 0.0 && x0.is_finite()) {
            return Err(Error::domain("x0", x0, "a finite number > 0"));
        }
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::domain("a", a, "a finite number >= 0"));
        }
        Ok(BaseIntegral { x0, a, settings })
    }

    fn integrate(&self, ms: &[f64]) -> Result<Vec<f64>> {
        for &m in ms {
            if !(M_MIN..=M_MAX).contains(&m) {
                return Err(Error::domain("m", m, "in [0.9, 1.1]"));
            }
        }
        if self.a == 0.0 {
            // 1 − cos(0) vanishes identically.
            return Ok(vec![0.0; ms.len()]);
        }
        let settings = self.settings;
        let eps = settings.regulator_epsilons();
        let u_max = settings.truncation_for(self.x0);
        if u_max.is_nan() || u_max <= self.x0 {
            return Err(Error::domain("truncation_u_max", u_max, "greater than x0"));
        }
        let length = u_max - self.x0;

        // Half a period of the fastest component, sin((m + a)x), per panel.
        let width = PI / (M_MAX + self.a);
        let mut panels = Vec::with_capacity(eps.len());
        for &e in eps {
            let wanted = DAMPING_CUTOFF / e;
            if wanted > length {
                let damping = exp(-e * length);
                if damping > settings.abs_tol {
                    return Err(Error::Convergence {
                        what: "regulator damping left at the truncation point",
                        value: damping,
                        limit: settings.abs_tol,
                    });
                }
            }
            let span = wanted.min(length);
            panels.push(libm::ceil(span / width) as usize);
        }
        let total = panels.iter().copied().max().unwrap_or(0);
        let reference_eps = panels
            .iter()
            .enumerate()
            .max_by_key(|(_, &n)| n)
            .map(|(k, _)| k)
            .unwrap_or(0);
        let reference_m = ms
            .iter()
            .enumerate()
            .min_by(|(_, p), (_, q)| abs(**p - 1.0).total_cmp(&abs(**q - 1.0)))
            .map(|(j, _)| j)
            .unwrap_or(0);

        let mut run = PanelRun {
            x0: self.x0,
            a: self.a,
            deltas: ms.iter().map(|m| m - 1.0).collect(),
            eps,
            active: eps.len(),
            reference_m,
            reference_eps,
            tol_density: 1e-2 * settings.abs_tol / (total as f64 * width),
            sums: vec![CompensatedSum::default(); ms.len() * eps.len()],
            sin_m: vec![0.0; ms.len()],
            damp: vec![0.0; eps.len()],
        };
        for i in 0..total {
            let left = i as f64 * width;
            let right = ((i + 1) as f64 * width).min(length);
            // Regulators are decreasing, so the active ones form a suffix.
            run.active = panels.iter().filter(|&&n| i < n).count();
            run.panel(left, right, 0);
        }

        let mut out = Vec::with_capacity(ms.len());
        let mut column = vec![0.0; eps.len()];
        for j in 0..ms.len() {
            for (k, value) in column.iter_mut().enumerate() {
                *value = run.sums[j * eps.len() + k].value();
            }
            let (value, spread) = extrapolate::with_spread(eps, &column);
            let limit = 10.0 * settings.abs_tol;
            if spread.is_nan() || spread > limit {
                return Err(Error::Convergence {
                    what: "regulator extrapolation spread",
                    value: spread,
                    limit,
                });
            }
            out.push(value);
        }
        Ok(out)
    }
}

impl ParametricIntegral for BaseIntegral<'_> {
    fn at(&self, m: f64) -> Result<f64> {
        Ok(self.integrate(&[m])?[0])
    }

    fn at_many(&self, ms: &[f64]) -> Result<Vec<f64>> {
        self.integrate(ms)
    }
}

/// Accumulation state shared by all panels of one [`BaseIntegral`] evaluation.
struct PanelRun<'e> {
    x0: f64,
    a: f64,
    /// `m − 1` for each requested `m`; exact for `m` near 1.
    deltas: Vec<f64>,
    eps: &'e [f64],
    /// Number of regulators (the smallest ones) still reaching this panel.
    active: usize,
    reference_m: usize,
    reference_eps: usize,
    tol_density: f64,
    /// Row-major `[m][ε]`.
    sums: Vec<CompensatedSum>,
    sin_m: Vec<f64>,
    damp: Vec<f64>,
}

impl PanelRun<'_> {
    fn panel(&mut self, left: f64, right: f64, depth: u32) {
        let nodes = panel_nodes(left, right);
        let mut shared = [(0.0, 0.0, 0.0); 15];
        let mut kronrod = 0.0;
        let mut gauss = 0.0;
        let mut res_abs = 0.0;
        let mut reference = [0.0; 15];
        let delta_ref = self.deltas[self.reference_m];
        let eps_ref = self.eps[self.reference_eps];
        for (n, &(x, wk, wg)) in nodes.iter().enumerate() {
            let u = x + self.x0;
            let envelope = (1.0 - cos(self.a * u)) / u;
            let (sx, cx) = sin_cos(x);
            shared[n] = (envelope, sx, cx);
            let value = envelope * shifted_sin(sx, cx, delta_ref, x) * exp(-eps_ref * x);
            reference[n] = value;
            kronrod += wk * value;
            gauss += wg * value;
            res_abs += wk * abs(value);
        }
        let mean = kronrod / (right - left);
        let res_asc: f64 = nodes
            .iter()
            .zip(reference.iter())
            .map(|(&(_, wk, _), &v)| wk * abs(v - mean))
            .sum();
        let err = rescaled_error(kronrod, gauss, res_abs, res_asc);
        let accept =
            err <= self.tol_density * (right - left) || err <= 100.0 * f64::EPSILON * res_abs;
        if !accept && depth < MAX_BISECTIONS {
            let mid = 0.5 * (left + right);
            self.panel(left, mid, depth + 1);
            self.panel(mid, right, depth + 1);
            return;
        }

        let n_eps = self.eps.len();
        let first_active = n_eps - self.active;
        for (&(x, wk, _), &(envelope, sx, cx)) in nodes.iter().zip(shared.iter()) {
            for (s, &delta) in self.sin_m.iter_mut().zip(self.deltas.iter()) {
                *s = shifted_sin(sx, cx, delta, x);
            }
            for k in first_active..n_eps {
                self.damp[k] = exp(-self.eps[k] * x);
            }
            let weighted = wk * envelope;
            for (j, &s) in self.sin_m.iter().enumerate() {
                let row = &mut self.sums[j * n_eps..(j + 1) * n_eps];
                for (sum, &damp) in row[first_active..]
                    .iter_mut()
                    .zip(&self.damp[first_active..])
                {
                    sum.add(weighted * s * damp);
                }
            }
        }
    }
}

/// `sin((1 + δ)x)` from `sin x`, `cos x`; keeps the rounding of the phase
/// independent of `δ`.
#[inline]
fn shifted_sin(sx: f64, cx: f64, delta: f64, x: f64) -> f64 {
    if delta == 0.0 {
        sx
    } else {
        let (sd, cd) = sin_cos(delta * x);
        sx * cd + cx * sd
    }
}

/// Regularised `I(m)` at one `m`.
pub fn base_integral(m: f64, x0: f64, a: f64, settings: &QuadratureSettings) -> Result<f64> {
    BaseIntegral::new(x0, a, settings)?.at(m)
}

/// `−μ²/(4π d³) · [2I(1) − 2I′(1) + I″(1)]` with five-point stencils of step
/// `m_stencil_h`.
pub fn apply_dm<I>(integral: &I, d: f64, mu: f64, settings: &QuadratureSettings) -> Result<f64>
where
    I: ParametricIntegral + ?Sized,
{
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain("d", d, "a finite number > 0"));
    }
    // Snap h so that every 1 + jh is exact and the spacing is uniform.
    let h = (1.0 + settings.m_stencil_h) - 1.0;
    let ms = [1.0 - 2.0 * h, 1.0 - h, 1.0, 1.0 + h, 1.0 + 2.0 * h];
    let values = integral.at_many(&ms)?;
    if values.len() != ms.len() {
        return Err(Error::Evaluation(
            "integral returned the wrong number of values",
        ));
    }
    let samples = [values[0], values[1], values[2], values[3], values[4]];
    let (first, second) = five_point(&samples, h);
    let prefactor = -mu * mu / (4.0 * PI * d * d * d);
    Ok(prefactor * (2.0 * samples[2] - 2.0 * first + second))
}

/// Energy shift of an isotropic atom by quadrature.
pub fn energy_shift_quadrature(
    config: &AtomWallConfig,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let guard = GuardBand::default();
    if classify_regime(config, guard) == Regime::SingularBand {
        return Err(Error::Singular {
            a: config.a(),
            distance: abs(config.a() - 1.0),
            guard: guard.width(),
        });
    }
    let integral = BaseIntegral::new(config.x0(), config.a(), settings)?;
    // Isotropic average: μ² along one axis is μ²/3.
    let mu_axis = config.mu() / SQRT_3;
    apply_dm(&integral, config.d(), mu_axis, settings)
}

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// `−∂ΔE/∂d` by a central difference of [`energy_shift_quadrature`] with
/// step `10⁻⁴ d`. Both `x₀` and `a` move with `d`.
pub fn force_finite_difference(
    config: &AtomWallConfig,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let guard = GuardBand::default();
    let centre = classify_regime(config, guard);
    let delta = FORCE_REL_STEP * config.d();
    for d in [config.d() - delta, config.d() + delta] {
        let regime = classify_regime(&config.with_distance(d)?, guard);
        if centre == Regime::SingularBand || regime != centre {
            return Err(Error::Evaluation(
                "distance stencil touches the back-reaction guard band",
            ));
        }
    }
    negative_gradient(
        |d| energy_shift_quadrature(&config.with_distance(d)?, settings),
        config.d(),
        FORCE_REL_STEP,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{dynamic_force, energy_shift_closed};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn settings_validation() {
        let ok = QuadratureSettings::default();
        assert!(ok.clone().with_abs_tol(0.0).is_err());
        assert!(ok.clone().with_regulators(vec![1e-3]).is_err());
        assert!(ok.clone().with_regulators(vec![1e-3, 2e-3]).is_err());
        assert!(ok.clone().with_regulators(vec![1e-3, -1e-4]).is_err());
        assert!(ok.clone().with_truncation(Some(-5.0)).is_err());
        assert!(QuadratureSettings::new(1e-9, None, vec![2e-3, 1e-3], 1e-2).is_err());
        assert!(QuadratureSettings::new(1e-9, None, vec![2e-3, 1e-3], 1e-3).is_ok());
    }

    #[test]
    fn zero_a_vanishes() {
        let s = QuadratureSettings::default();
        for x0 in [0.5, 20.0, 300.0] {
            assert_eq!(base_integral(1.0, x0, 0.0, &s).unwrap(), 0.0);
        }
    }

    #[test]
    fn m_outside_layout_is_rejected() {
        let s = QuadratureSettings::default();
        assert!(base_integral(1.2, 20.0, 0.5, &s).is_err());
    }

    #[test]
    fn dm_of_constant_and_quadratic() {
        let s = QuadratureSettings::default();
        let (d, mu) = (2.0, 1.5);
        let kappa = 0.7;
        let constant = apply_dm(&|_m: f64| Ok(kappa), d, mu, &s).unwrap();
        let expected = -mu * mu / (4.0 * PI * d * d * d) * 2.0 * kappa;
        assert!(rel(constant, expected) < 1e-12);
        let square = apply_dm(&|m: f64| Ok(m * m), d, mu, &s).unwrap();
        assert!(square.abs() < 1e-9);
    }

    #[test]
    fn base_integral_matches_sine_cosine_reduction() {
        // I(1) from the tail integrals of sin and cos over [x₀, ∞).
        let s = QuadratureSettings::default();
        let (x0, a) = (20.0, 0.5);
        let si = |z: f64| crate::specfun::sine_integral(z).unwrap();
        let ci = |z: f64| crate::specfun::cosine_integral(z).unwrap();
        let sin_tail = |k: f64| k.signum() * PI / 2.0 - si(k * x0);
        let cos_tail = |k: f64| -ci(k.abs() * x0);
        let j = |k: f64| x0.cos() * sin_tail(k) - x0.sin() * cos_tail(k);
        let expected = j(1.0) - 0.5 * j(1.0 + a) - 0.5 * j(1.0 - a);
        let got = base_integral(1.0, x0, a, &s).unwrap();
        assert!((got - expected).abs() < 1e-6, "{got} vs {expected}");
    }

    #[test]
    fn smooth_in_m() {
        let s = QuadratureSettings::default();
        let integral = BaseIntegral::new(20.0, 0.5, &s).unwrap();
        let v = integral.at_many(&[0.9999, 1.0, 1.0001]).unwrap();
        let slope = (v[2] - v[0]) / 2e-4;
        let curvature = (v[2] - 2.0 * v[1] + v[0]) / 1e-8;
        assert!(slope.is_finite() && curvature.is_finite());
        assert!(slope.abs() < 1e3 && curvature.abs() < 1e5);
    }

    #[test]
    fn energy_matches_closed_form() {
        let s = QuadratureSettings::default();
        let c = AtomWallConfig::new(10.0, 5.0, 1.0, 1.0).unwrap();
        let q = energy_shift_quadrature(&c, &s).unwrap();
        let e = energy_shift_closed(&c, GuardBand::default()).unwrap();
        assert!(rel(q, e) < 1e-4, "{q} vs {e}");
        let zero = AtomWallConfig::new(10.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(energy_shift_quadrature(&zero, &s).unwrap(), 0.0);
    }

    #[test]
    fn force_matches_closed_form_both_branches() {
        let s = QuadratureSettings::default();
        for t in [5.0, 40.0] {
            let c = AtomWallConfig::new(10.0, t, 1.0, 1.0).unwrap();
            let q = force_finite_difference(&c, &s).unwrap();
            let f = dynamic_force(&c, GuardBand::default()).unwrap().force;
            assert!(rel(q, f) < 1e-3, "t={t}: {q} vs {f}");
        }
    }

    #[test]
    fn singular_and_straddling_configs_are_refused() {
        let s = QuadratureSettings::default();
        let c = AtomWallConfig::new(10.0, 20.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            energy_shift_quadrature(&c, &s),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(
            force_finite_difference(&c, &s),
            Err(Error::Evaluation(_))
        ));
    }

    #[test]
    fn short_truncation_is_a_convergence_error() {
        let s = QuadratureSettings::default()
            .with_truncation(Some(500.0))
            .unwrap();
        let err = base_integral(1.0, 20.0, 0.5, &s).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }), "{err:?}");
    }
}
