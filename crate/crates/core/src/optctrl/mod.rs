//! Minimum-torque attitude maneuvers.
//!
//! The discrete problem minimizes `½ Σ_{k=1}^{N-1} ‖τ_k‖²` subject to the
//! variational integrator and the boundary data `(R_0, Ω_0, R_N, Ω_{N-1})`.
//! Its first-order conditions, with multipliers eliminated, form a square
//! system in the unknowns `x = (τ_1..τ_{N-1}, Ω_1..Ω_{N-2})` of dimension
//! `3(2N − 3)`:
//!
//! * stationarity, `k = 2..N-2`;
//! * momentum evolution `J_d Ω_k = g_kᵀ(hτ_k + J_d Ω_{k-1})`, `k = 1..N-1`;
//! * closure `log(R_Nᵀ R_0 exp(hΩ_0)···exp(hΩ_{N-1})) = 0`.
//!
//! `τ_0 = τ_N = 0` are structural. The system is solved by damped Newton
//! with complex-step Jacobians, see [`solve`].

mod multipliers;
mod residual;
mod solve;

pub use multipliers::{multiplier_check, MultiplierReport};
pub use residual::{closure_residual, residual, ManeuverResidual};
pub use solve::{initial_guess, reconstruct, solve, solve_direct, solve_from, OptimalSolution};

use nalgebra::Vector3;
use thiserror::Error;

use crate::liealg::{InertiaModel, LieError, Rotation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptCtrlError {
    #[error("invalid maneuver: {0}")]
    InvalidSpec(String),
    #[error("closure rotation is too close to pi for its logarithm (angle {angle})")]
    ClosureIllConditioned { angle: f64 },
    #[error(
        "solver did not converge: best residual {best_residual:e} after {iterations} iterations"
    )]
    NoConvergence {
        best_residual: f64,
        iterations: usize,
    },
}

impl From<LieError> for OptCtrlError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::AngleNearPi { angle } => Self::ClosureIllConditioned { angle },
            other => Self::InvalidSpec(other.to_string()),
        }
    }
}

/// Boundary data, horizon and inertia of one maneuver.
///
/// The attitudes enter the optimality system only through the relative
/// rotation `R_Nᵀ R_0`, which is computed once here and reused by every
/// evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ManeuverSpec {
    r0: Rotation,
    r_n: Rotation,
    relative: Rotation,
    pub omega0: Vector3<f64>,
    pub omega_nm1: Vector3<f64>,
    n: usize,
    h: f64,
    pub inertia: InertiaModel,
}

impl ManeuverSpec {
    pub fn new(
        r0: Rotation,
        omega0: Vector3<f64>,
        r_n: Rotation,
        omega_nm1: Vector3<f64>,
        n: usize,
        h: f64,
        inertia: InertiaModel,
    ) -> Result<Self, OptCtrlError> {
        if n < 4 {
            return Err(OptCtrlError::InvalidSpec(format!(
                "need at least 4 steps, got {n}"
            )));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(OptCtrlError::InvalidSpec(format!(
                "step size must be positive and finite, got {h}"
            )));
        }
        if !(omega0.iter().chain(omega_nm1.iter()).all(|v| v.is_finite())) {
            return Err(OptCtrlError::InvalidSpec(
                "boundary velocities must be finite".into(),
            ));
        }
        Ok(Self {
            relative: r_n.tr_mul(&r0),
            r0,
            r_n,
            omega0,
            omega_nm1,
            n,
            h,
            inertia,
        })
    }

    pub fn r0(&self) -> &Rotation {
        &self.r0
    }

    pub fn r_n(&self) -> &Rotation {
        &self.r_n
    }

    /// `R_Nᵀ R_0`.
    pub fn relative(&self) -> &Rotation {
        &self.relative
    }

    pub fn steps(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn horizon(&self) -> f64 {
        self.n as f64 * self.h
    }

    /// Scalar length of the unknown vector, `3(2N − 3)`.
    pub fn unknown_dim(&self) -> usize {
        3 * (2 * self.n - 3)
    }
}

/// Rotates both boundary attitudes by `q` on the left.
///
/// The stored relative rotation is carried over unchanged, since
/// `(Q R_N)ᵀ (Q R_0) = R_Nᵀ R_0`; this keeps residuals of the transformed
/// spec bit-identical to the original.
pub fn equivariance_transform(q: &Rotation, spec: &ManeuverSpec) -> ManeuverSpec {
    ManeuverSpec {
        r0: q * &spec.r0,
        r_n: q * &spec.r_n,
        ..spec.clone()
    }
}

/// Unknowns `τ_1..τ_{N-1}` and `Ω_1..Ω_{N-2}`, packed torques first.
#[derive(Debug, Clone, PartialEq)]
pub struct UnknownVector {
    pub taus: Vec<Vector3<f64>>,
    pub omegas: Vec<Vector3<f64>>,
}

impl UnknownVector {
    pub fn zeros(n: usize) -> Self {
        Self {
            taus: vec![Vector3::zeros(); n - 1],
            omegas: vec![Vector3::zeros(); n - 2],
        }
    }

    /// Step count `N` implied by the lengths.
    pub fn steps(&self) -> usize {
        self.taus.len() + 1
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.taus
            .iter()
            .chain(&self.omegas)
            .flat_map(|v| v.iter().copied())
            .collect()
    }

    pub fn from_flat(flat: &[f64], n: usize) -> Result<Self, OptCtrlError> {
        let expected = 3 * (2 * n - 3);
        if n < 4 || flat.len() != expected {
            return Err(OptCtrlError::InvalidSpec(format!(
                "unknown vector for N = {n} needs {expected} entries, got {}",
                flat.len()
            )));
        }
        let vecs: Vec<Vector3<f64>> = flat
            .chunks_exact(3)
            .map(Vector3::from_column_slice)
            .collect();
        let (taus, omegas) = vecs.split_at(n - 1);
        Ok(Self {
            taus: taus.to_vec(),
            omegas: omegas.to_vec(),
        })
    }
}

/// `½ Σ_{k=1}^{N-1} τ_k · τ_k`.
pub fn cost(x: &UnknownVector) -> f64 {
    0.5 * x.taus.iter().map(|t| t.dot(t)).sum::<f64>()
}
