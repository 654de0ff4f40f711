use nalgebra::Vector3;
use std::convert::Infallible;

use super::{check_step, DiscreteTrajectory, DynamicsError, RigidBodyState, TorqueProfile};
use crate::liealg::{coadjoint, exp_so3, InertiaModel, Rotation};
use crate::nlsolve::{newton_solve, ResidualFunction, SolverOptions};
use crate::scalar::Scalar;

/// Residual ∞-norm accepted for the implicit momentum update.
pub const STEP_TOL: f64 = 1e-12;
pub const STEP_MAX_ITER: usize = 50;

/// `F(Ω) = J_d Ω − exp(hΩ)ᵀ (h τ_k + J_d Ω_{k-1})`.
#[derive(Debug, Clone)]
pub struct StepResidual<'a> {
    pub omega_prev: Vector3<f64>,
    pub torque: Vector3<f64>,
    pub inertia: &'a InertiaModel,
    pub h: f64,
}

impl StepResidual<'_> {
    fn carried_momentum(&self) -> Vector3<f64> {
        self.torque * self.h + self.inertia.apply(&self.omega_prev)
    }
}

impl ResidualFunction for StepResidual<'_> {
    type Error = Infallible;

    fn dim(&self) -> usize {
        3
    }

    fn eval<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>, Infallible> {
        let omega = Vector3::new(x[0], x[1], x[2]);
        let g = exp_so3(&(omega * T::from_f64(self.h)));
        let carried = self.carried_momentum().map(T::from_f64);
        let r = self.inertia.apply(&omega) - coadjoint(&g, &carried);
        Ok(vec![r[0], r[1], r[2]])
    }
}

/// Solves the implicit momentum update for `Ω_k` given `Ω_{k-1}` and `τ_k`,
/// starting Newton from `Ω_{k-1}`.
pub fn dlga_step(
    omega_prev: &Vector3<f64>,
    torque_k: &Vector3<f64>,
    inertia: &InertiaModel,
    h: f64,
) -> Result<Vector3<f64>, DynamicsError> {
    check_step(h)?;
    let residual = StepResidual {
        omega_prev: *omega_prev,
        torque: *torque_k,
        inertia,
        h,
    };
    let options = SolverOptions::default()
        .with_tol(STEP_TOL)
        .with_max_iter(STEP_MAX_ITER);
    match newton_solve(&residual, omega_prev.as_slice(), &options) {
        Ok(report) => Ok(Vector3::from_column_slice(&report.root)),
        Err(err) => {
            let (residual, iterations) = err
                .best()
                .map_or((f64::NAN, 0), |b| (b.residual_norm, b.iterations));
            Err(DynamicsError::StepSolveFailed {
                step: 0,
                residual,
                iterations,
            })
        }
    }
}

/// Integrates the variational integrator for `n` steps from `initial`.
pub fn dlga_simulate(
    initial: &RigidBodyState,
    torque: &impl TorqueProfile,
    inertia: &InertiaModel,
    h: f64,
    n: usize,
) -> Result<DiscreteTrajectory, DynamicsError> {
    check_step(h)?;
    let mut attitudes: Vec<Rotation> = Vec::with_capacity(n + 1);
    let mut omegas = Vec::with_capacity(n);
    let torques: Vec<Vector3<f64>> = (0..=n).map(|k| torque.at_step(k, h)).collect();

    attitudes.push(initial.attitude);
    let mut omega = initial.omega;
    for k in 0..n {
        if k > 0 {
            omega = dlga_step(&omega, &torques[k], inertia, h).map_err(|e| match e {
                DynamicsError::StepSolveFailed {
                    residual,
                    iterations,
                    ..
                } => DynamicsError::StepSolveFailed {
                    step: k,
                    residual,
                    iterations,
                },
                other => other,
            })?;
        }
        omegas.push(omega);
        let next = attitudes[k] * exp_so3(&(omega * h));
        attitudes.push(next);
    }

    Ok(DiscreteTrajectory {
        h,
        attitudes,
        omegas,
        torques,
    })
}
