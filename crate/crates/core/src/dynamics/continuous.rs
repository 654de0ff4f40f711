use nalgebra::{Matrix3, Vector3};

use super::{check_step, DynamicsError, RigidBodyState, TorqueProfile};
use crate::liealg::{hat, InertiaModel};

/// Time derivatives of the forced rigid body in `(R, M)` form:
/// `Ṙ = R hat(Ω)`, `Ṁ = M × Ω + τ` with `Ω = J_d⁻¹ M`.
///
/// `M × Ω` is `vee([hat(M), hat(Ω)])`.
pub fn continuous_rhs(
    attitude: &Matrix3<f64>,
    momentum: &Vector3<f64>,
    torque: &Vector3<f64>,
    inertia: &InertiaModel,
) -> (Matrix3<f64>, Vector3<f64>) {
    let omega = inertia.solve(momentum);
    (attitude * hat(&omega), momentum.cross(&omega) + torque)
}

/// Classical RK4 samples of the continuous equations.
///
/// Attitudes are the raw RK4 matrices; they are deliberately not projected
/// back onto SO(3), so their orthogonality drift can be compared against the
/// variational integrator.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousTrajectory {
    pub h: f64,
    pub attitudes: Vec<Matrix3<f64>>,
    pub omegas: Vec<Vector3<f64>>,
    pub torques: Vec<Vector3<f64>>,
}

impl ContinuousTrajectory {
    pub fn max_orthogonality_error(&self) -> f64 {
        self.attitudes
            .iter()
            .map(|m| (m.transpose() * m - Matrix3::identity()).norm())
            .fold(0.0, f64::max)
    }
}

/// Integrates `n` RK4 steps of size `h`; returns `n + 1` samples.
pub fn rk4_integrate(
    initial: &RigidBodyState,
    torque: &impl TorqueProfile,
    inertia: &InertiaModel,
    h: f64,
    n: usize,
) -> Result<ContinuousTrajectory, DynamicsError> {
    check_step(h)?;
    let mut r = *initial.attitude.matrix();
    let mut m = inertia.apply(&initial.omega);
    let mut out = ContinuousTrajectory {
        h,
        attitudes: Vec::with_capacity(n + 1),
        omegas: Vec::with_capacity(n + 1),
        torques: Vec::with_capacity(n + 1),
    };
    let f = |r: &Matrix3<f64>, m: &Vector3<f64>, t: f64| {
        continuous_rhs(r, m, &torque.torque(t), inertia)
    };

    for k in 0..=n {
        let t = k as f64 * h;
        out.attitudes.push(r);
        out.omegas.push(inertia.solve(&m));
        out.torques.push(torque.torque(t));
        if k == n {
            break;
        }
        let (r1, m1) = f(&r, &m, t);
        let (r2, m2) = f(&(r + r1 * (0.5 * h)), &(m + m1 * (0.5 * h)), t + 0.5 * h);
        let (r3, m3) = f(&(r + r2 * (0.5 * h)), &(m + m2 * (0.5 * h)), t + 0.5 * h);
        let (r4, m4) = f(&(r + r3 * h), &(m + m3 * h), t + h);
        r += (r1 + (r2 + r3) * 2.0 + r4) * (h / 6.0);
        m += (m1 + (m2 + m3) * 2.0 + m4) * (h / 6.0);
    }
    Ok(out)
}
