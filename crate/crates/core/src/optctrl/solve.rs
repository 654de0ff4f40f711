use nalgebra::Vector3;

use super::residual::ManeuverResidual;
use super::{cost, ManeuverSpec, OptCtrlError, UnknownVector};
use crate::dynamics::DiscreteTrajectory;
use crate::liealg::{exp_so3, log_so3, Rotation};
use crate::nlsolve::{newton_solve, NewtonError, SolverOptions};

/// Continuation fractions of the relative rotation tried after a failed
/// direct solve.
const CONTINUATION: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalSolution {
    /// Attitudes `R_0..R_N`, velocities `Ω_0..Ω_{N-1}`, torques `τ_0..τ_N`
    /// with `τ_0 = τ_N = 0`.
    pub trajectory: DiscreteTrajectory,
    pub unknowns: UnknownVector,
    pub cost: f64,
    /// `‖F(x)‖∞` at the returned root.
    pub residual_norm: f64,
    /// Newton iterations, summed over continuation stages.
    pub iterations: usize,
    /// `‖log(R_Nᵀ R_N*)‖` of the reconstructed trajectory.
    pub endpoint_error: f64,
    /// Number of continuation stages used; 0 for a direct solve.
    pub continuation_stages: usize,
    /// `‖F‖∞` history of the final Newton run.
    pub residual_history: Vec<f64>,
}

/// Deterministic start point.
///
/// Torques are zero. Velocities ramp linearly in `k` from `Ω_0*` to the
/// mean geodesic velocity `ξ = log(R_0ᵀ R_N)/(N h)` at the midpoint and on
/// to `Ω_{N-1}*`.
pub fn initial_guess(spec: &ManeuverSpec) -> Result<UnknownVector, OptCtrlError> {
    let n = spec.steps();
    let xi = -log_so3(spec.relative())? / spec.horizon();
    let mid = (n - 1) as f64 / 2.0;
    let last = (n - 1) as f64;
    let omegas = (1..n - 1)
        .map(|k| {
            let k = k as f64;
            if k <= mid {
                spec.omega0 + (xi - spec.omega0) * (k / mid)
            } else {
                xi + (spec.omega_nm1 - xi) * ((k - mid) / (last - mid))
            }
        })
        .collect();
    Ok(UnknownVector {
        taus: vec![Vector3::zeros(); n - 1],
        omegas,
    })
}

/// Rolls the attitudes forward from `R_0*` using `Ω_0*`, the interior
/// velocities of `x` and `Ω_{N-1}*`.
pub fn reconstruct(x: &UnknownVector, spec: &ManeuverSpec) -> DiscreteTrajectory {
    let n = spec.steps();
    let h = spec.h();
    let mut omegas = Vec::with_capacity(n);
    omegas.push(spec.omega0);
    omegas.extend_from_slice(&x.omegas);
    omegas.push(spec.omega_nm1);

    let mut torques = Vec::with_capacity(n + 1);
    torques.push(Vector3::zeros());
    torques.extend_from_slice(&x.taus);
    torques.push(Vector3::zeros());

    let mut attitudes: Vec<Rotation> = Vec::with_capacity(n + 1);
    attitudes.push(*spec.r0());
    for (k, w) in omegas.iter().enumerate() {
        let next = attitudes[k] * exp_so3(&(w * h));
        attitudes.push(next);
    }
    DiscreteTrajectory {
        h,
        attitudes,
        omegas,
        torques,
    }
}

/// Newton from [`initial_guess`], falling back to continuation in the
/// maneuver angle when the direct solve fails.
pub fn solve(
    spec: &ManeuverSpec,
    options: &SolverOptions,
) -> Result<OptimalSolution, OptCtrlError> {
    match solve_direct(spec, options) {
        Err(OptCtrlError::NoConvergence { .. }) => solve_with_continuation(spec, options),
        other => other,
    }
}

/// Newton from [`initial_guess`] without continuation.
pub fn solve_direct(
    spec: &ManeuverSpec,
    options: &SolverOptions,
) -> Result<OptimalSolution, OptCtrlError> {
    solve_from(spec, &initial_guess(spec)?, options)
}

/// Newton from a caller-supplied start point.
pub fn solve_from(
    spec: &ManeuverSpec,
    start: &UnknownVector,
    options: &SolverOptions,
) -> Result<OptimalSolution, OptCtrlError> {
    let f = ManeuverResidual { spec };
    let report = newton_solve(&f, &start.to_flat(), options).map_err(|e| match e {
        NewtonError::Residual(inner) => inner,
        NewtonError::InvalidOptions(msg) => OptCtrlError::InvalidSpec(msg),
        NewtonError::DimensionMismatch { expected, found } => OptCtrlError::InvalidSpec(format!(
            "start point has {found} entries, expected {expected}"
        )),
        other => {
            let best = other
                .best()
                .expect("solver failures carry their best iterate");
            OptCtrlError::NoConvergence {
                best_residual: best.residual_norm,
                iterations: best.iterations,
            }
        }
    })?;
    let unknowns = UnknownVector::from_flat(&report.root, spec.steps())?;
    let trajectory = reconstruct(&unknowns, spec);
    let end = trajectory.attitudes[spec.steps()].tr_mul(spec.r_n());
    let endpoint_error = log_so3(&end)?.norm();
    Ok(OptimalSolution {
        cost: cost(&unknowns),
        trajectory,
        unknowns,
        residual_norm: report.residual_norm,
        iterations: report.iterations,
        endpoint_error,
        continuation_stages: 0,
        residual_history: report.residual_history,
    })
}

fn solve_with_continuation(
    spec: &ManeuverSpec,
    options: &SolverOptions,
) -> Result<OptimalSolution, OptCtrlError> {
    let full = log_so3(&spec.r0().tr_mul(spec.r_n()))?;
    let mut start = None;
    let mut iterations = 0;
    for (stage, &lambda) in CONTINUATION.iter().enumerate() {
        let staged = if lambda == 1.0 {
            spec.clone()
        } else {
            let target = spec.r0() * &exp_so3(&(full * lambda));
            ManeuverSpec::new(
                *spec.r0(),
                spec.omega0,
                target,
                spec.omega_nm1,
                spec.steps(),
                spec.h(),
                spec.inertia.clone(),
            )?
        };
        let x0 = match &start {
            Some(x) => x,
            None => &initial_guess(&staged)?,
        };
        match solve_from(&staged, x0, options) {
            Ok(mut sol) => {
                iterations += sol.iterations;
                if lambda == 1.0 {
                    sol.iterations = iterations;
                    sol.continuation_stages = stage + 1;
                    return Ok(sol);
                }
                start = Some(sol.unknowns);
            }
            Err(OptCtrlError::NoConvergence {
                best_residual,
                iterations: it,
            }) => {
                return Err(OptCtrlError::NoConvergence {
                    best_residual,
                    iterations: iterations + it,
                })
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("the last continuation stage always returns")
}
