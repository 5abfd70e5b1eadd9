//! Std companion to `cpforce-core`: parameter sweeps, figure grids, oracle
//! validation runs, CSV/JSON emission and the flat config file read by the
//! `cpforce` binary.

#![forbid(unsafe_code)]

pub mod config;
pub mod error;
pub mod output;
pub mod sweep;
pub mod validate;

pub use config::{FileConfig, Resolved};
pub use error::CliError;
pub use output::{Format, StaticRecord, SweepDocument, SweepRecord, CSV_COLUMNS};
pub use sweep::{Figure, SweepSpec};
pub use validate::{CheckSummary, ValidationPlan, ValidationReport};
