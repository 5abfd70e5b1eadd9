//! Real-argument sine and cosine integrals and their auxiliary functions.
//!
//! ```text
//! Si(x) = ∫₀ˣ sin(u)/u du
//! Ci(x) = γ + ln x + ∫₀ˣ (cos u − 1)/u du          (x > 0)
//! f(z)  =  Ci(z) sin z + [π/2 − Si(z)] cos z
//! g(z)  = −Ci(z) cos z + [π/2 − Si(z)] sin z
//! ```
//!
//! Below the crossover the power series are summed directly. Above it the
//! pair `(f, g)` is obtained from the continued fraction of `e^{iz} E₁(iz) =
//! g(z) − i f(z)`, and `Si`, `Ci` are rebuilt from it. Large-argument `f`, `g`
//! and `π/2 − Si` therefore never go through a cancelling subtraction.

use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{abs, ln, sin_cos};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const MAX_SERIES_TERMS: usize = 500;
const MAX_FRACTION_TERMS: usize = 100_000;

/// Accuracy target and branch switch for the special-function evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPrecision {
    target_abs_tol: f64,
    series_asymptotic_crossover: f64,
}

impl Default for EvalPrecision {
    fn default() -> Self {
        EvalPrecision {
            target_abs_tol: 1e-13,
            series_asymptotic_crossover: 4.0,
        }
    }
}

/// `Si`, `Ci`, `f`, `g` and `π/2 − Si` evaluated together at one positive
/// argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineCosineIntegrals {
    pub si: f64,
    pub ci: f64,
    /// `π/2 − Si(z)`, computed without cancellation for large `z`.
    pub si_complement: f64,
    pub f: f64,
    pub g: f64,
}

impl EvalPrecision {
    pub fn new(target_abs_tol: f64, series_asymptotic_crossover: f64) -> Result<Self> {
        if !(target_abs_tol > 0.0 && target_abs_tol.is_finite()) {
            return Err(Error::domain("target_abs_tol", target_abs_tol, "> 0"));
        }
        if !(series_asymptotic_crossover > 0.0 && series_asymptotic_crossover.is_finite()) {
            return Err(Error::domain(
                "series_asymptotic_crossover",
                series_asymptotic_crossover,
                "> 0",
            ));
        }
        Ok(EvalPrecision {
            target_abs_tol,
            series_asymptotic_crossover,
        })
    }

    pub fn target_abs_tol(&self) -> f64 {
        self.target_abs_tol
    }

    pub fn series_asymptotic_crossover(&self) -> f64 {
        self.series_asymptotic_crossover
    }

    // Terms are dropped once they fall three orders below the target.
    fn term_tol(&self) -> f64 {
        (self.target_abs_tol * 1e-3).max(f64::EPSILON * 1e-2)
    }

    /// Sine integral; odd, defined for every finite `x`.
    pub fn sine_integral(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::domain("x", x, "a finite number"));
        }
        let z = abs(x);
        let si = if z == 0.0 {
            0.0
        } else {
            self.integrals_unchecked(z).si
        };
        Ok(if x < 0.0 { -si } else { si })
    }

    /// Cosine integral for `x > 0`.
    pub fn cosine_integral(&self, x: f64) -> Result<f64> {
        check_positive("x", x)?;
        Ok(self.integrals_unchecked(x).ci)
    }

    pub fn aux_f(&self, z: f64) -> Result<f64> {
        check_positive("z", z)?;
        Ok(self.integrals_unchecked(z).f)
    }

    pub fn aux_g(&self, z: f64) -> Result<f64> {
        check_positive("z", z)?;
        Ok(self.integrals_unchecked(z).g)
    }

    /// All four functions at once for `z > 0`.
    pub fn integrals(&self, z: f64) -> Result<SineCosineIntegrals> {
        check_positive("z", z)?;
        Ok(self.integrals_unchecked(z))
    }

    fn integrals_unchecked(&self, z: f64) -> SineCosineIntegrals {
        let (s, c) = sin_cos(z);
        if z <= self.series_asymptotic_crossover {
            let si = si_series(z, self.term_tol());
            let ci = ci_series(z, self.term_tol());
            let si_complement = FRAC_PI_2 - si;
            SineCosineIntegrals {
                si,
                ci,
                si_complement,
                f: ci * s + si_complement * c,
                g: -ci * c + si_complement * s,
            }
        } else {
            let (f, g) = fg_continued_fraction(z, self.term_tol());
            let si_complement = f * c + g * s;
            SineCosineIntegrals {
                si: FRAC_PI_2 - si_complement,
                ci: f * s - g * c,
                si_complement,
                f,
                g,
            }
        }
    }
}

fn check_positive(name: &'static str, z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(name, z, "a finite number > 0"))
    }
}

/// Maclaurin series `Σ (−1)ⁿ x^{2n+1} / ((2n+1)(2n+1)!)`.
pub(crate) fn si_series(x: f64, tol: f64) -> f64 {
    let x2 = x * x;
    let mut power = x; // (−1)ⁿ x^{2n+1}/(2n+1)!
    let mut sum = x;
    for n in 1..MAX_SERIES_TERMS {
        let k = (2 * n) as f64;
        power *= -x2 / (k * (k + 1.0));
        let term = power / (k + 1.0);
        sum += term;
        if abs(term) <= tol {
            break;
        }
    }
    sum
}

/// `γ + ln x + Σ (−1)ⁿ x^{2n} / (2n (2n)!)`.
pub(crate) fn ci_series(x: f64, tol: f64) -> f64 {
    let x2 = x * x;
    let mut power = 1.0; // (−1)ⁿ x^{2n}/(2n)!
    let mut sum = 0.0;
    for n in 1..MAX_SERIES_TERMS {
        let k = (2 * n) as f64;
        power *= -x2 / ((k - 1.0) * k);
        let term = power / k;
        sum += term;
        if abs(term) <= tol {
            break;
        }
    }
    EULER_GAMMA + ln(x) + sum
}

/// Modified Lentz evaluation of `e^{iz} E₁(iz) = g(z) − i f(z)`.
pub(crate) fn fg_continued_fraction(z: f64, tol: f64) -> (f64, f64) {
    const TINY: f64 = 1e-300;
    let one = Complex64::new(1.0, 0.0);
    let mut b = Complex64::new(1.0, z);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = one / b;
    let mut h = d;
    for i in 2..MAX_FRACTION_TERMS {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += 2.0;
        d = one / (d * a + b);
        c = b + Complex64::new(a, 0.0) / c;
        let delta = c * d;
        h *= delta;
        if abs(delta.re - 1.0) + abs(delta.im) <= tol {
            break;
        }
    }
    (-h.im, h.re)
}

/// Sine integral at default precision.
pub fn sine_integral(x: f64) -> Result<f64> {
    EvalPrecision::default().sine_integral(x)
}

/// Cosine integral at default precision.
pub fn cosine_integral(x: f64) -> Result<f64> {
    EvalPrecision::default().cosine_integral(x)
}

/// Auxiliary function `f` at default precision.
pub fn aux_f(z: f64) -> Result<f64> {
    EvalPrecision::default().aux_f(z)
}

/// Auxiliary function `g` at default precision.
pub fn aux_g(z: f64) -> Result<f64> {
    EvalPrecision::default().aux_g(z)
}

/// `Si`, `Ci`, `f`, `g` together at default precision.
pub fn integrals(z: f64) -> Result<SineCosineIntegrals> {
    EvalPrecision::default().integrals(z)
}
