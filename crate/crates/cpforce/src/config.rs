//! Flat `key = value` config file (TOML syntax, no tables).
//!
//! Every key is optional. Values given on the command line win over the
//! file, and the file wins over built-in defaults.

use std::path::Path;

use cpforce_core::GuardBand;
use serde::Deserialize;

use crate::error::CliError;
use crate::output::Format;

pub const DEFAULT_K0: f64 = 1.0;
pub const DEFAULT_MU: f64 = 1.0;
pub const DEFAULT_STEPS: usize = 200;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub d: Option<f64>,
    pub t: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub k0: Option<f64>,
    pub mu: Option<f64>,
    pub guard_band: Option<f64>,
    pub format: Option<Format>,
    pub truncation: Option<f64>,
    pub energy_tol: Option<f64>,
    pub force_tol: Option<f64>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    /// Layers command-line values (`flags`) over this file.
    pub fn overlay(&self, flags: &FileConfig) -> Resolved {
        macro_rules! pick {
            ($field:ident) => {
                flags.$field.clone().or_else(|| self.$field.clone())
            };
        }
        Resolved(FileConfig {
            d: pick!(d),
            t: pick!(t),
            t_min: pick!(t_min),
            t_max: pick!(t_max),
            steps: pick!(steps),
            k0: pick!(k0),
            mu: pick!(mu),
            guard_band: pick!(guard_band),
            format: pick!(format),
            truncation: pick!(truncation),
            energy_tol: pick!(energy_tol),
            force_tol: pick!(force_tol),
        })
    }
}

/// Flag and file values merged; accessors fill in defaults or insist on a value.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved(pub FileConfig);

impl Resolved {
    fn required(value: Option<f64>, flag: &str) -> Result<f64, CliError> {
        value.ok_or_else(|| CliError::Usage(format!("missing required value --{flag}")))
    }

    pub fn d(&self) -> Result<f64, CliError> {
        Self::required(self.0.d, "d")
    }

    pub fn t(&self) -> Result<f64, CliError> {
        Self::required(self.0.t, "t")
    }

    pub fn t_min(&self) -> Result<f64, CliError> {
        Self::required(self.0.t_min, "t-min")
    }

    pub fn t_max(&self) -> Result<f64, CliError> {
        Self::required(self.0.t_max, "t-max")
    }

    pub fn steps(&self) -> usize {
        self.0.steps.unwrap_or(DEFAULT_STEPS)
    }

    pub fn k0(&self) -> f64 {
        self.0.k0.unwrap_or(DEFAULT_K0)
    }

    pub fn mu(&self) -> f64 {
        self.0.mu.unwrap_or(DEFAULT_MU)
    }

    pub fn guard_band(&self) -> Result<GuardBand, CliError> {
        match self.0.guard_band {
            Some(width) => Ok(GuardBand::new(width)?),
            None => Ok(GuardBand::default()),
        }
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.0.format.unwrap_or(default)
    }
}
