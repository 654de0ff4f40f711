//! Run configuration: one JSON document per run.

use std::path::Path;

use lie_dmoc::dynamics::{ForcedSpinProblem, RigidBodyState};
use lie_dmoc::liealg::{exp_so3, InertiaModel, Rotation};
use lie_dmoc::nlsolve::JacobianMethod;
use lie_dmoc::optctrl::ManeuverSpec;
use lie_dmoc::SolverOptions;
use nalgebra::{Matrix3, Vector3};
use serde::Deserialize;

use crate::CliError;

/// Tolerance for attitudes given as matrices.
pub const ROTATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Simulate,
    Solve,
    Verify,
    Convergence,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Checked against the subcommand when present.
    #[serde(default)]
    pub mode: Option<Mode>,
    /// File name stem of the outputs; defaults to the config file stem.
    #[serde(default)]
    pub output: Option<String>,
    /// Operator matrix `J` of the inertia, `J(ξ) = Jξ + ξJ`.
    #[serde(default)]
    pub inertia: Option<[[f64; 3]; 3]>,
    #[serde(default)]
    pub steps: Option<usize>,
    #[serde(default)]
    pub h: Option<f64>,
    #[serde(default)]
    pub initial: Option<BoundaryConfig>,
    #[serde(default, rename = "final")]
    pub terminal: Option<BoundaryConfig>,
    #[serde(default)]
    pub torque: TorqueConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub convergence: Option<ConvergenceConfig>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryConfig {
    pub attitude: AttitudeConfig,
    #[serde(default)]
    pub omega: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AttitudeConfig {
    /// Rotation vector, angle in radians.
    AxisAngle([f64; 3]),
    /// Row-major 3×3 matrix.
    Matrix([f64; 9]),
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TorqueConfig {
    #[default]
    Zero,
    Sine {
        amplitude: f64,
        frequency: f64,
        axis: [f64; 3],
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobianConfig {
    ComplexStep,
    CentralDifference,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub step_eps: f64,
    pub jacobian: JacobianConfig,
    pub backtrack_factor: f64,
    pub max_halvings: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let d = SolverOptions::default();
        Self {
            tol: d.tol,
            max_iter: d.max_iter,
            step_eps: d.step_eps,
            jacobian: JacobianConfig::ComplexStep,
            backtrack_factor: d.backtrack_factor,
            max_halvings: d.max_halvings,
        }
    }
}

/// Planar forced-spin study; missing fields take the reference values.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConvergenceConfig {
    pub horizon: f64,
    pub inertia: f64,
    pub theta0: f64,
    pub omega0: f64,
    pub amplitude: f64,
    pub frequency: f64,
    pub steps: Vec<usize>,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        let p = ForcedSpinProblem::reference();
        Self {
            horizon: p.horizon,
            inertia: p.inertia,
            theta0: p.theta0,
            omega0: p.omega0,
            amplitude: p.amplitude,
            frequency: p.frequency,
            steps: lie_dmoc::presets::PLANAR_STEPS.to_vec(),
        }
    }
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {msg}"))
}

fn require<T: Clone>(v: &Option<T>, field: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| invalid(field, "missing"))
}

fn finite_vec(v: [f64; 3], field: &str) -> Result<Vector3<f64>, CliError> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(Vector3::from(v))
    } else {
        Err(invalid(field, "entries must be finite"))
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn check_mode(&self, expected: Mode) -> Result<(), CliError> {
        match self.mode {
            Some(m) if m != expected => Err(invalid(
                "mode",
                format!("config is for {m:?}, command is {expected:?}").to_lowercase(),
            )),
            _ => Ok(()),
        }
    }

    pub fn inertia_model(&self) -> Result<InertiaModel, CliError> {
        let rows = require(&self.inertia, "inertia")?;
        let m = Matrix3::from_fn(|i, j| rows[i][j]);
        InertiaModel::new(m).map_err(|e| invalid("inertia", e))
    }

    fn steps_and_h(&self, min_steps: usize) -> Result<(usize, f64), CliError> {
        let n = require(&self.steps, "steps")?;
        let h = require(&self.h, "h")?;
        if n < min_steps {
            return Err(invalid(
                "steps",
                format!("must be at least {min_steps}, got {n}"),
            ));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(invalid(
                "h",
                format!("must be positive and finite, got {h}"),
            ));
        }
        Ok((n, h))
    }

    pub fn initial_state(&self) -> Result<RigidBodyState, CliError> {
        let b = require(&self.initial, "initial")?;
        Ok(RigidBodyState::new(
            b.attitude.rotation("initial.attitude")?,
            finite_vec(b.omega, "initial.omega")?,
        ))
    }

    pub fn simulation(&self) -> Result<(RigidBodyState, InertiaModel, usize, f64), CliError> {
        let (n, h) = self.steps_and_h(1)?;
        Ok((self.initial_state()?, self.inertia_model()?, n, h))
    }

    pub fn maneuver(&self) -> Result<ManeuverSpec, CliError> {
        let (n, h) = self.steps_and_h(4)?;
        let start = self.initial_state()?;
        let end = require(&self.terminal, "final")?;
        ManeuverSpec::new(
            start.attitude,
            start.omega,
            end.attitude.rotation("final.attitude")?,
            finite_vec(end.omega, "final.omega")?,
            n,
            h,
            self.inertia_model()?,
        )
        .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn solver_options(&self) -> Result<SolverOptions, CliError> {
        let s = &self.solver;
        let opts = SolverOptions {
            tol: s.tol,
            max_iter: s.max_iter,
            step_eps: s.step_eps,
            jacobian: match s.jacobian {
                JacobianConfig::ComplexStep => JacobianMethod::ComplexStep,
                JacobianConfig::CentralDifference => JacobianMethod::CentralDifference,
            },
            backtrack_factor: s.backtrack_factor,
            max_halvings: s.max_halvings,
        };
        opts.validate().map_err(|e| invalid("solver", e))?;
        Ok(opts)
    }

    pub fn planar_study(&self) -> Result<(ForcedSpinProblem, Vec<usize>), CliError> {
        let c = self.convergence.clone().unwrap_or_default();
        let values = [
            ("horizon", c.horizon),
            ("inertia", c.inertia),
            ("frequency", c.frequency),
        ];
        for (name, v) in values {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(
                    &format!("convergence.{name}"),
                    "must be positive and finite",
                ));
            }
        }
        if c.steps.is_empty() || c.steps.contains(&0) {
            return Err(invalid(
                "convergence.steps",
                "must be a non-empty list of positive counts",
            ));
        }
        let problem = ForcedSpinProblem {
            horizon: c.horizon,
            inertia: c.inertia,
            theta0: c.theta0,
            omega0: c.omega0,
            amplitude: c.amplitude,
            frequency: c.frequency,
        };
        Ok((problem, c.steps))
    }
}

impl AttitudeConfig {
    pub fn rotation(&self, field: &str) -> Result<Rotation, CliError> {
        match self {
            Self::AxisAngle(v) => Ok(exp_so3(&finite_vec(*v, field)?)),
            Self::Matrix(m) => {
                let m = Matrix3::from_row_slice(m);
                Rotation::from_matrix(m, ROTATION_TOL).map_err(|e| invalid(field, e))
            }
        }
    }
}

impl TorqueConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if let Self::Sine {
            amplitude,
            frequency,
            axis,
        } = self
        {
            if !(amplitude.is_finite() && frequency.is_finite()) {
                return Err(invalid("torque", "amplitude and frequency must be finite"));
            }
            finite_vec(*axis, "torque.axis")?;
        }
        Ok(())
    }
}
