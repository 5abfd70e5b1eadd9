use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cpforce::config::FileConfig;
use cpforce::output::{self, Format, StaticRecord, SweepRecord};
use cpforce::validate::{ValidationPlan, DEFAULT_ENERGY_TOL, DEFAULT_FORCE_TOL};
use cpforce::{CliError, Figure, Resolved, SweepSpec};
use cpforce_core::{
    dynamic_force, static_force, static_force_reduced, AtomWallConfig, QuadratureSettings,
    StaticForceInput,
};

/// Dynamical Casimir-Polder force between a bare two-level atom and a
/// perfectly conducting wall (units with c = 1).
#[derive(Parser)]
#[command(name = "cpforce", version)]
struct Cli {
    /// Flat key = value config file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time-independent ground-state force.
    Static(Physics),
    /// Force at one (d, t) point.
    Force {
        #[command(flatten)]
        physics: Physics,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        guard_band: Option<f64>,
        /// Default json.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Force on a uniform time grid.
    Sweep {
        #[command(flatten)]
        physics: Physics,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        sink: Sink,
    },
    /// Data behind figure 1 (t < 20) or figure 2 (t > 20) at d = 10.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        guard_band: Option<f64>,
        #[command(flatten)]
        sink: Sink,
    },
    /// Cross-check the closed forms against the quadrature oracle.
    Validate {
        #[command(flatten)]
        physics: Physics,
        /// Single-point grid at (--d, --t).
        #[arg(long)]
        t: Option<f64>,
        /// Upper limit of the oracle integrals.
        #[arg(long)]
        truncation: Option<f64>,
        #[arg(long)]
        energy_tol: Option<f64>,
        #[arg(long)]
        force_tol: Option<f64>,
    },
}

#[derive(Args)]
struct Physics {
    /// Atom-wall distance.
    #[arg(long)]
    d: Option<f64>,
    /// Transition wavenumber (default 1).
    #[arg(long)]
    k0: Option<f64>,
    /// Dipole moment (default 1).
    #[arg(long)]
    mu: Option<f64>,
}

#[derive(Args)]
struct Grid {
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    /// Grid points including both ends (default 200).
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    guard_band: Option<f64>,
}

#[derive(Args)]
struct Sink {
    /// Default csv.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Physics {
    fn flags(&self) -> FileConfig {
        FileConfig {
            d: self.d,
            k0: self.k0,
            mu: self.mu,
            ..FileConfig::default()
        }
    }
}

fn emit(
    out: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut w = BufWriter::new(file);
            write(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| CliError::io(path, e))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn write_sweep(spec: &SweepSpec, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let doc = spec.run()?;
    emit(out, |w| match format {
        Format::Csv => output::write_csv(w, &doc),
        Format::Json => output::write_json(w, &doc),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Static(physics) => {
            let r = file.overlay(&physics.flags());
            let input = StaticForceInput::new(r.d()?, r.k0(), r.mu())?;
            let record = StaticRecord {
                d: input.d(),
                k0: input.k0(),
                mu: input.mu(),
                x0: input.x0(),
                force: static_force(input)?,
                force_reduced: static_force_reduced(input.x0())?,
            };
            emit(None, |w| output::write_json(w, &record))
        }
        Command::Force {
            physics,
            t,
            guard_band,
            format,
        } => {
            let r = file.overlay(&FileConfig {
                t,
                guard_band,
                format,
                ..physics.flags()
            });
            let guard = r.guard_band()?;
            let config = AtomWallConfig::new(r.d()?, r.t()?, r.k0(), r.mu())?;
            let record = SweepRecord::from_result(&dynamic_force(&config, guard)?);
            emit(None, |w| match r.format_or(Format::Json) {
                Format::Json => output::write_json(w, &record),
                Format::Csv => output::write_record_csv(w, r.k0(), r.mu(), guard.width(), &record),
            })
        }
        Command::Sweep {
            physics,
            grid,
            sink,
        } => {
            let r = file.overlay(&FileConfig {
                t_min: grid.t_min,
                t_max: grid.t_max,
                steps: grid.steps,
                guard_band: grid.guard_band,
                format: sink.format,
                ..physics.flags()
            });
            let spec = SweepSpec::new(
                r.d()?,
                r.t_min()?,
                r.t_max()?,
                r.steps(),
                r.k0(),
                r.mu(),
                r.guard_band()?,
            )?;
            write_sweep(&spec, r.format_or(Format::Csv), sink.out.as_deref())
        }
        Command::Figure {
            which,
            steps,
            guard_band,
            sink,
        } => {
            // Physical parameters are fixed by the figure; only grid and
            // output settings are taken from the config file.
            let r = Resolved(FileConfig {
                steps: steps.or(file.steps),
                guard_band: guard_band.or(file.guard_band),
                format: sink.format.or(file.format),
                ..FileConfig::default()
            });
            let spec = Figure::from_index(which)?.spec(r.steps(), r.guard_band()?)?;
            write_sweep(&spec, r.format_or(Format::Csv), sink.out.as_deref())
        }
        Command::Validate {
            physics,
            t,
            truncation,
            energy_tol,
            force_tol,
        } => {
            let r = file.overlay(&FileConfig {
                t,
                truncation,
                energy_tol,
                force_tol,
                ..physics.flags()
            });
            let mut plan = ValidationPlan {
                k0: r.k0(),
                mu: r.mu(),
                energy_tol: r.0.energy_tol.unwrap_or(DEFAULT_ENERGY_TOL),
                force_tol: r.0.force_tol.unwrap_or(DEFAULT_FORCE_TOL),
                settings: QuadratureSettings::default().with_truncation(r.0.truncation)?,
                ..ValidationPlan::default()
            };
            match (r.0.d, r.0.t) {
                (Some(d), Some(t)) => plan.points = vec![(d, t)],
                (None, None) => {}
                _ => {
                    return Err(CliError::Usage(
                        "a single-point grid needs both --d and --t".into(),
                    ))
                }
            }
            let report = plan.run()?;
            print!("{}", report.render());
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Validation)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
