//! Batch front end for the `lie-dmoc` binary.
//!
//! Every command writes its artifacts under an output directory; file
//! names start with the config's `output` stem (or the config file stem).

pub mod config;
pub mod output;
pub mod verify;

use std::path::{Path, PathBuf};

use lie_dmoc::dynamics::{dlga_simulate, so2_error_study, SineTorque, ZeroTorque};
use lie_dmoc::optctrl::{multiplier_check, solve, OptCtrlError, OptimalSolution};
use nalgebra::Vector3;
use thiserror::Error;

use config::{Mode, RunConfig, TorqueConfig};
use output::SolveSummary;

pub const THREADS_ENV: &str = "LIE_DMOC_THREADS";
pub const LOG_VECTOR_FILE: &str = "log_so3_vectors.csv";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("no convergence: best residual {best_residual:e} after {iterations} iterations")]
    NoConvergence {
        best_residual: f64,
        iterations: usize,
    },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::NoConvergence { .. } => 3,
            Self::Io(_) | Self::Failed(_) => 1,
        }
    }
}

impl From<OptCtrlError> for CliError {
    fn from(e: OptCtrlError) -> Self {
        match e {
            OptCtrlError::NoConvergence {
                best_residual,
                iterations,
            } => Self::NoConvergence {
                best_residual,
                iterations,
            },
            OptCtrlError::InvalidSpec(m) => Self::Config(m),
            other => Self::Failed(other.to_string()),
        }
    }
}

/// Sizes the global rayon pool from `LIE_DMOC_THREADS` when it is set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| {
            CliError::Config(format!(
                "{THREADS_ENV}: expected a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Failed(e.to_string()))
}

/// Loaded config plus where its outputs go.
pub struct Run {
    pub config: RunConfig,
    pub out_dir: PathBuf,
    pub stem: String,
}

impl Run {
    pub fn load(config_path: &Path, out_dir: &Path, mode: Mode) -> Result<Self, CliError> {
        let config = RunConfig::load(config_path)?;
        config.check_mode(mode)?;
        let stem = match &config.output {
            Some(s) if s.is_empty() || s.contains(['/', '\\']) => {
                return Err(CliError::Config(format!(
                    "output: not a plain file stem: {s:?}"
                )))
            }
            Some(s) => s.clone(),
            None => config_path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "run".into()),
        };
        create_dir(out_dir)?;
        Ok(Self {
            config,
            out_dir: out_dir.to_path_buf(),
            stem,
        })
    }

    fn path(&self, suffix: &str) -> PathBuf {
        self.out_dir.join(format!("{}{suffix}", self.stem))
    }

    pub fn trajectory_path(&self) -> PathBuf {
        self.path(".csv")
    }

    pub fn summary_path(&self) -> PathBuf {
        self.path("_summary.json")
    }

    pub fn convergence_path(&self) -> PathBuf {
        self.path(".csv")
    }
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}

pub fn simulate(run: &Run) -> Result<PathBuf, CliError> {
    let c = &run.config;
    let (init, inertia, n, h) = c.simulation()?;
    c.torque.validate()?;
    let traj = match c.torque {
        TorqueConfig::Zero => dlga_simulate(&init, &ZeroTorque, &inertia, h, n),
        TorqueConfig::Sine {
            amplitude,
            frequency,
            axis,
        } => {
            let torque = SineTorque {
                amplitude,
                frequency,
                axis: Vector3::from(axis),
            };
            dlga_simulate(&init, &torque, &inertia, h, n)
        }
    }
    .map_err(|e| CliError::Failed(e.to_string()))?;
    let path = run.trajectory_path();
    output::write_trajectory(&path, &traj)?;
    Ok(path)
}

pub fn solve_maneuver(run: &Run) -> Result<(OptimalSolution, SolveSummary), CliError> {
    let c = &run.config;
    let spec = c.maneuver()?;
    if c.torque != TorqueConfig::Zero {
        return Err(CliError::Config(
            "torque: not used by solve; remove it".into(),
        ));
    }
    let sol = solve(&spec, &c.solver_options()?)?;
    let summary = SolveSummary {
        steps: spec.steps(),
        h: spec.h(),
        cost: sol.cost,
        residual_norm: sol.residual_norm,
        iterations: sol.iterations,
        continuation_stages: sol.continuation_stages,
        endpoint_error: sol.endpoint_error,
        multiplier_residual: multiplier_check(&sol.trajectory, &spec).max_consistency_residual,
    };
    output::write_trajectory(&run.trajectory_path(), &sol.trajectory)?;
    output::write_json(&run.summary_path(), &summary)?;
    Ok((sol, summary))
}

pub fn convergence(run: &Run) -> Result<PathBuf, CliError> {
    let (problem, steps) = run.config.planar_study()?;
    let rows = so2_error_study(&problem, &steps);
    let path = run.convergence_path();
    output::write_convergence(&path, &rows)?;
    Ok(path)
}

/// Runs the invariant suite and writes the logarithm test vectors.
pub fn verify(filter: Option<&str>, out_dir: &Path) -> Result<Vec<verify::Outcome>, CliError> {
    create_dir(out_dir)?;
    output::write_log_vectors(
        &out_dir.join(LOG_VECTOR_FILE),
        &verify::log_test_rotations(),
    )?;
    Ok(verify::run_checks(filter))
}
