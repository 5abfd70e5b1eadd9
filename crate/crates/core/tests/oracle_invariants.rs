use std::f64::consts::PI;

use cpforce_core::dynamics::{dynamic_force, energy_shift_closed, AtomWallConfig, GuardBand};
use cpforce_core::oracle::{
    base_integral, energy_shift_quadrature, force_finite_difference, QuadratureSettings,
    DEFAULT_TRUNCATION_PERIODS,
};

fn default_truncation(x0: f64) -> f64 {
    x0 + 2.0 * PI * DEFAULT_TRUNCATION_PERIODS
}

#[test]
fn regulator_independence() {
    let base = QuadratureSettings::default();
    let tol = base.abs_tol();
    for (x0, a) in [(20.0, 0.5), (5.0, 2.0), (60.0, 0.3)] {
        let reference = base_integral(1.0, x0, a, &base).unwrap();
        // Halving ε needs twice the length to leave the same damping behind.
        let halved: Vec<f64> = base.regulator_epsilons().iter().map(|e| e / 2.0).collect();
        let settings = base
            .clone()
            .with_regulators(halved)
            .unwrap()
            .with_truncation(Some(x0 + 2.0 * (default_truncation(x0) - x0)))
            .unwrap();
        let value = base_integral(1.0, x0, a, &settings).unwrap();
        assert!(
            (value - reference).abs() <= 5.0 * tol,
            "x0={x0} a={a}: {value} vs {reference}"
        );
    }
}

#[test]
fn truncation_independence() {
    let base = QuadratureSettings::default();
    let tol = base.abs_tol();
    for (x0, a) in [(20.0, 0.5), (5.0, 2.0)] {
        let reference = base_integral(1.0, x0, a, &base).unwrap();
        let longer = base
            .clone()
            .with_truncation(Some(x0 + 2.0 * (default_truncation(x0) - x0)))
            .unwrap();
        let value = base_integral(1.0, x0, a, &longer).unwrap();
        assert!((value - reference).abs() <= 5.0 * tol);
    }
}

#[test]
fn energy_agreement_on_both_sides() {
    let settings = QuadratureSettings::default();
    for (d, t) in [(1.0, 0.4), (10.0, 12.0), (10.0, 30.0), (50.0, 400.0)] {
        let c = AtomWallConfig::new(d, t, 1.0, 1.0).unwrap();
        let q = energy_shift_quadrature(&c, &settings).unwrap();
        let e = energy_shift_closed(&c, GuardBand::default()).unwrap();
        assert!(((q - e) / e).abs() < 1e-4, "d={d} t={t}: {q} vs {e}");
    }
}

#[test]
fn force_agreement_off_unit_wavenumber() {
    let settings = QuadratureSettings::default();
    let c = AtomWallConfig::new(4.0, 3.0, 2.5, 0.7).unwrap();
    let q = force_finite_difference(&c, &settings).unwrap();
    let f = dynamic_force(&c, GuardBand::default()).unwrap().force;
    assert!(((q - f) / f).abs() < 1e-3, "{q} vs {f}");
}
