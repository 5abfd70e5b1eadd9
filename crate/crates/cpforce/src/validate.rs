//! Oracle-versus-closed-form cross-checks behind `cpforce validate`.

use std::fmt::Write as _;

use cpforce_core::{
    classify_regime, dynamic_force, energy_shift_closed, energy_shift_quadrature,
    force_finite_difference, AtomWallConfig, Error, GuardBand, QuadratureSettings, Regime,
};
use rayon::prelude::*;

use crate::error::CliError;

pub const DEFAULT_ENERGY_TOL: f64 = 1e-4;
pub const DEFAULT_FORCE_TOL: f64 = 1e-3;

/// `(d, t)` points at `d = 10` covering both sides of `t = 20`.
pub fn default_points() -> Vec<(f64, f64)> {
    [5.0, 10.0, 15.0, 25.0, 40.0, 80.0]
        .iter()
        .map(|&t| (10.0, t))
        .collect()
}

#[derive(Debug, Clone)]
pub struct ValidationPlan {
    pub points: Vec<(f64, f64)>,
    pub k0: f64,
    pub mu: f64,
    pub settings: QuadratureSettings,
    pub energy_tol: f64,
    pub force_tol: f64,
}

impl Default for ValidationPlan {
    fn default() -> Self {
        ValidationPlan {
            points: default_points(),
            k0: 1.0,
            mu: 1.0,
            settings: QuadratureSettings::default(),
            energy_tol: DEFAULT_ENERGY_TOL,
            force_tol: DEFAULT_FORCE_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub name: &'static str,
    pub points: usize,
    /// `None` when no point could be compared.
    pub max_rel_dev: Option<f64>,
    pub tol: f64,
    /// One line per point whose oracle evaluation failed.
    pub failures: Vec<String>,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.max_rel_dev.is_some_and(|m| m <= self.tol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckSummary>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(
                s,
                "check {}: points={} max_rel_dev={} tol={:e} {}",
                c.name,
                c.points,
                c.max_rel_dev
                    .map_or("n/a".to_owned(), |m| format!("{m:.3e}")),
                c.tol,
                if c.passed() { "ok" } else { "FAILED" }
            );
            for f in &c.failures {
                let _ = writeln!(s, "  {f}");
            }
        }
        let _ = writeln!(
            s,
            "{}",
            if self.passed() {
                "all checks passed"
            } else {
                "validation failed"
            }
        );
        s
    }
}

type Evaluator = fn(&AtomWallConfig, &QuadratureSettings) -> Result<(f64, f64), Error>;

fn energy_pair(c: &AtomWallConfig, s: &QuadratureSettings) -> Result<(f64, f64), Error> {
    Ok((
        energy_shift_quadrature(c, s)?,
        energy_shift_closed(c, GuardBand::default())?,
    ))
}

fn force_pair(c: &AtomWallConfig, s: &QuadratureSettings) -> Result<(f64, f64), Error> {
    Ok((
        force_finite_difference(c, s)?,
        dynamic_force(c, GuardBand::default())?.force,
    ))
}

fn run_check(
    name: &'static str,
    configs: &[AtomWallConfig],
    settings: &QuadratureSettings,
    tol: f64,
    eval: Evaluator,
) -> CheckSummary {
    let outcomes: Vec<_> = configs.par_iter().map(|c| (c, eval(c, settings))).collect();
    let mut max_rel_dev: Option<f64> = None;
    let mut failures = Vec::new();
    for (c, outcome) in outcomes {
        match outcome {
            Ok((oracle, closed)) => {
                let dev = ((oracle - closed) / closed).abs();
                let dev = if dev.is_nan() { f64::INFINITY } else { dev };
                max_rel_dev = Some(max_rel_dev.map_or(dev, |m| m.max(dev)));
            }
            Err(e) => failures.push(format!("{name} at d={} t={}: {e}", c.d(), c.t())),
        }
    }
    CheckSummary {
        name,
        points: configs.len(),
        max_rel_dev,
        tol,
        failures,
    }
}

impl ValidationPlan {
    pub fn run(&self) -> Result<ValidationReport, CliError> {
        if self.points.is_empty() {
            return Err(CliError::Usage("validation grid is empty".into()));
        }
        let guard = GuardBand::default();
        let configs = self
            .points
            .iter()
            .map(|&(d, t)| {
                let c = AtomWallConfig::new(d, t, self.k0, self.mu)?;
                if classify_regime(&c, guard) == Regime::SingularBand {
                    // Reuse the closed form's diagnostic.
                    dynamic_force(&c, guard)?;
                }
                Ok(c)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(ValidationReport {
            checks: vec![
                run_check(
                    "energy",
                    &configs,
                    &self.settings,
                    self.energy_tol,
                    energy_pair,
                ),
                run_check(
                    "force",
                    &configs,
                    &self.settings,
                    self.force_tol,
                    force_pair,
                ),
            ],
        })
    }
}
