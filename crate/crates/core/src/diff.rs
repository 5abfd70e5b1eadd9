//! Central finite-difference stencils.

use crate::error::{Error, Result};

/// First and second derivative from samples at `x + j h`, `j = −2..=2`.
///
/// Written in symmetric differences so that constant and linear parts cancel
/// exactly.
pub fn five_point(samples: &[f64; 5], h: f64) -> (f64, f64) {
    let [m2, m1, c, p1, p2] = *samples;
    let first = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
    let inner = (p1 - c) + (m1 - c);
    let outer = (p2 - c) + (m2 - c);
    let second = (16.0 * inner - outer) / (12.0 * h * h);
    (first, second)
}

/// `−dE/dd` by a two-point central difference with step `rel_step · d`.
pub fn negative_gradient<F>(mut energy: F, d: f64, rel_step: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain("d", d, "a finite number > 0"));
    }
    if !(rel_step > 0.0 && rel_step < 1.0) {
        return Err(Error::domain("rel_step", rel_step, "in (0, 1)"));
    }
    let delta = rel_step * d;
    let plus = energy(d + delta)?;
    let minus = energy(d - delta)?;
    Ok(-(plus - minus) / (2.0 * delta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_point_is_exact_on_quartics() {
        let p = |x: f64| 3.0 - 2.0 * x + x * x - 0.5 * x.powi(3) + 0.25 * x.powi(4);
        let x = 1.3;
        let h = 0.1;
        let samples = [-2.0, -1.0, 0.0, 1.0, 2.0].map(|j| p(x + j * h));
        let (d1, d2) = five_point(&samples, h);
        let d1_exact = -2.0 + 2.0 * x - 1.5 * x * x + x.powi(3);
        let d2_exact = 2.0 - 3.0 * x + 3.0 * x * x;
        assert!((d1 - d1_exact).abs() < 1e-12);
        assert!((d2 - d2_exact).abs() < 1e-10);
    }

    #[test]
    fn quadratic_energy_gives_linear_force() {
        for d in [0.5, 3.0, 10.0] {
            let force = negative_gradient(|x| Ok(x * x), d, 1e-4).unwrap();
            assert!(((force + 2.0 * d) / (2.0 * d)).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_bad_steps() {
        assert!(negative_gradient(Ok, 1.0, 0.0).is_err());
        assert!(negative_gradient(Ok, -1.0, 1e-4).is_err());
    }
}
