//! Uniform time grids evaluated through the closed-form force.

use cpforce_core::{dynamic_force, AtomWallConfig, Error, GuardBand};
use rayon::prelude::*;

use crate::error::CliError;
use crate::output::{SweepDocument, SweepRecord};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub d: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
    pub k0: f64,
    pub mu: f64,
    pub guard: GuardBand,
}

impl SweepSpec {
    pub fn new(
        d: f64,
        t_min: f64,
        t_max: f64,
        steps: usize,
        k0: f64,
        mu: f64,
        guard: GuardBand,
    ) -> Result<Self, CliError> {
        if !(t_min.is_finite() && t_max.is_finite() && t_min >= 0.0 && t_min < t_max) {
            return Err(CliError::Usage(format!(
                "need 0 <= t-min < t-max, got t-min={t_min} t-max={t_max}"
            )));
        }
        if steps < 2 {
            return Err(CliError::Usage(format!("need steps >= 2, got {steps}")));
        }
        // Surface bad d/k0/mu now rather than once per grid point.
        AtomWallConfig::new(d, t_min, k0, mu)?;
        Ok(SweepSpec {
            d,
            t_min,
            t_max,
            steps,
            k0,
            mu,
            guard,
        })
    }

    /// `t_i = t_min + i (t_max - t_min)/(steps - 1)`, endpoints exact.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps - 1;
        let span = self.t_max - self.t_min;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.t_max
                } else {
                    self.t_min + i as f64 * span / n as f64
                }
            })
            .collect()
    }

    /// Evaluates the grid in parallel; rows come back in ascending `t`.
    pub fn run(&self) -> Result<SweepDocument, CliError> {
        let rows: Vec<Result<Option<SweepRecord>, Error>> = self
            .grid()
            .into_par_iter()
            .map(|t| {
                let config = AtomWallConfig::new(self.d, t, self.k0, self.mu)?;
                match dynamic_force(&config, self.guard) {
                    Ok(result) => Ok(Some(SweepRecord::from_result(&result))),
                    Err(Error::Singular { .. }) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect();
        let mut records = Vec::with_capacity(rows.len());
        let mut skipped = 0;
        for row in rows {
            match row? {
                Some(r) => records.push(r),
                None => skipped += 1,
            }
        }
        Ok(SweepDocument {
            k0: self.k0,
            mu: self.mu,
            guard_band: self.guard.width(),
            skipped,
            records,
        })
    }
}

/// The two published sweeps around the back-reaction time `t = 20` at `d = 10`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    BeforeBackReaction,
    AfterBackReaction,
}

impl Figure {
    pub const D: f64 = 10.0;

    pub fn from_index(which: u8) -> Result<Self, CliError> {
        match which {
            1 => Ok(Figure::BeforeBackReaction),
            2 => Ok(Figure::AfterBackReaction),
            _ => Err(CliError::Usage(format!(
                "--which must be 1 or 2, got {which}"
            ))),
        }
    }

    pub fn t_range(&self) -> (f64, f64) {
        match self {
            Figure::BeforeBackReaction => (0.1, 19.8),
            Figure::AfterBackReaction => (20.2, 120.0),
        }
    }

    pub fn spec(&self, steps: usize, guard: GuardBand) -> Result<SweepSpec, CliError> {
        let (t_min, t_max) = self.t_range();
        SweepSpec::new(Self::D, t_min, t_max, steps, 1.0, 1.0, guard)
    }
}
