//! Forward rigid-body dynamics.
//!
//! The discrete model is the forced Lie group variational integrator
//!
//! ```text
//! R_{k+1} = R_k g_k,            g_k = exp(h Ω_k)
//! M_k     = Ad*_{g_k}(h τ_k + M_{k-1}),   M_k = J_d Ω_k
//! ```
//!
//! whose momentum update is implicit in `Ω_k` and is solved by Newton's
//! method at each step. The torque applied between steps `k-1` and `k` is
//! `τ_k`; `τ_0` and `τ_N` never enter the forward dynamics.

mod continuous;
mod planar;
mod symplectic;
mod variational;

pub use continuous::{continuous_rhs, rk4_integrate, ContinuousTrajectory};
pub use planar::{
    so2_error_study, so2_simulate, ForcedSpinProblem, PlanarErrorRow, PlanarTrajectory,
};
pub use symplectic::{
    integrate_separable, loglog_slope, stormer_verlet_step, symplectic_euler_step, Scheme,
};
pub use variational::{dlga_simulate, dlga_step, StepResidual, STEP_MAX_ITER, STEP_TOL};

use nalgebra::Vector3;
use thiserror::Error;

use crate::liealg::{coadjoint, exp_so3, InertiaModel, Rotation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("implicit momentum update failed at step {step}: residual {residual:e} after {iterations} iterations")]
    StepSolveFailed {
        step: usize,
        residual: f64,
        iterations: usize,
    },
    #[error("step size must be positive and finite, got {0}")]
    InvalidStepSize(f64),
}

/// Attitude and body angular velocity.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidBodyState {
    pub attitude: Rotation,
    pub omega: Vector3<f64>,
}

impl RigidBodyState {
    pub fn new(attitude: Rotation, omega: Vector3<f64>) -> Self {
        Self { attitude, omega }
    }

    pub fn at_rest(attitude: Rotation) -> Self {
        Self::new(attitude, Vector3::zeros())
    }
}

/// A body-frame torque history.
pub trait TorqueProfile {
    fn torque(&self, t: f64) -> Vector3<f64>;

    /// Torque `τ_k` used by the discrete model at step `k`.
    fn at_step(&self, k: usize, h: f64) -> Vector3<f64> {
        self.torque(k as f64 * h)
    }
}

impl<F: Fn(f64) -> Vector3<f64>> TorqueProfile for F {
    fn torque(&self, t: f64) -> Vector3<f64> {
        self(t)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ZeroTorque;

impl TorqueProfile for ZeroTorque {
    fn torque(&self, _t: f64) -> Vector3<f64> {
        Vector3::zeros()
    }
}

/// `amplitude · sin(frequency · t) · axis`, with `frequency` in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineTorque {
    pub amplitude: f64,
    pub frequency: f64,
    pub axis: Vector3<f64>,
}

impl TorqueProfile for SineTorque {
    fn torque(&self, t: f64) -> Vector3<f64> {
        self.axis * (self.amplitude * (self.frequency * t).sin())
    }
}

/// Replays a per-step torque sequence `τ_0..τ_N`; `torque(t)` holds the
/// value of the nearest step.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledTorque {
    pub h: f64,
    pub torques: Vec<Vector3<f64>>,
}

impl TorqueProfile for SampledTorque {
    fn torque(&self, t: f64) -> Vector3<f64> {
        let k = (t / self.h).round().max(0.0) as usize;
        self.at_step(k, self.h)
    }

    fn at_step(&self, k: usize, _h: f64) -> Vector3<f64> {
        self.torques.get(k).copied().unwrap_or_else(Vector3::zeros)
    }
}

/// Discrete attitude history `R_0..R_N`, velocities `Ω_0..Ω_{N-1}` and
/// torques `τ_0..τ_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteTrajectory {
    pub h: f64,
    pub attitudes: Vec<Rotation>,
    pub omegas: Vec<Vector3<f64>>,
    pub torques: Vec<Vector3<f64>>,
}

impl DiscreteTrajectory {
    /// Number of steps `N`.
    pub fn steps(&self) -> usize {
        self.omegas.len()
    }

    /// `max_k ‖R_{k+1} − R_k exp(hΩ_k)‖_F`.
    pub fn kinematic_residual(&self) -> f64 {
        self.omegas
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let next = self.attitudes[k] * exp_so3(&(w * self.h));
                (self.attitudes[k + 1].matrix() - next.matrix()).norm()
            })
            .fold(0.0, f64::max)
    }

    /// `max_{k=1..N-1} ‖J_d Ω_k − g_kᵀ(hτ_k + J_d Ω_{k-1})‖∞`.
    pub fn momentum_residual(&self, inertia: &InertiaModel) -> f64 {
        (1..self.omegas.len())
            .map(|k| {
                let g = exp_so3(&(self.omegas[k] * self.h));
                let carried = self.torques[k] * self.h + inertia.apply(&self.omegas[k - 1]);
                (inertia.apply(&self.omegas[k]) - coadjoint(&g, &carried)).amax()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_orthogonality_error(&self) -> f64 {
        self.attitudes
            .iter()
            .map(Rotation::orthogonality_error)
            .fold(0.0, f64::max)
    }

    pub fn max_det_error(&self) -> f64 {
        self.attitudes
            .iter()
            .map(|r| (r.det() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn check_step(h: f64) -> Result<(), DynamicsError> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(DynamicsError::InvalidStepSize(h))
    }
}
