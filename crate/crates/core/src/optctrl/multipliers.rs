use nalgebra::Vector3;

use super::ManeuverSpec;
use crate::dynamics::DiscreteTrajectory;
use crate::liealg::{adjoint, coadjoint, exp_so3, Rotation};

/// Multipliers recovered from a solution and the residual of the
/// multiplier transport equation.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierReport {
    /// `Λ²_k` for `k = 1..N-1`, stored at index `k - 1`.
    pub lambda2s: Vec<Vector3<f64>>,
    /// `Λ¹_k` for `k = 1..N-2`, stored at index `k - 1`.
    pub lambda1s: Vec<Vector3<f64>>,
    /// `max_{k=2..N-2} ‖Λ¹_{k-1} − Ad*_{g_k⁻¹} Λ¹_k‖`.
    pub max_consistency_residual: f64,
}

/// Recovers the multipliers of the constrained problem from a trajectory:
///
/// ```text
/// Λ²_k = (1/h) g_kᵀ τ_k
/// Λ¹_k = J_d Λ²_k − J_d (g_{k+1} Λ²_{k+1}) + h M_k × Λ²_k
/// ```
///
/// and checks the transport `Λ¹_{k-1} = g_k Λ¹_k`, which the stationarity
/// block of the residual enforces up to a factor `h`.
pub fn multiplier_check(trajectory: &DiscreteTrajectory, spec: &ManeuverSpec) -> MultiplierReport {
    let n = spec.steps();
    let h = spec.h();
    let j = &spec.inertia;
    let g: Vec<Rotation> = trajectory
        .omegas
        .iter()
        .map(|w| exp_so3(&(w * h)))
        .collect();

    let lambda2s: Vec<Vector3<f64>> = (1..n)
        .map(|k| coadjoint(&g[k], &trajectory.torques[k]) / h)
        .collect();
    let l2 = |k: usize| lambda2s[k - 1];

    let lambda1s: Vec<Vector3<f64>> = (1..n - 1)
        .map(|k| {
            let m = j.apply(&trajectory.omegas[k]);
            j.apply(&l2(k)) - j.apply(&adjoint(&g[k + 1], &l2(k + 1))) + m.cross(&l2(k)) * h
        })
        .collect();
    let l1 = |k: usize| lambda1s[k - 1];

    let max_consistency_residual = (2..n - 1)
        .map(|k| (l1(k - 1) - adjoint(&g[k], &l1(k))).norm())
        .fold(0.0, f64::max);

    MultiplierReport {
        lambda2s,
        lambda1s,
        max_consistency_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::InertiaModel;
    use crate::nlsolve::SolverOptions;
    use crate::optctrl::{residual, solve};

    fn spec() -> ManeuverSpec {
        ManeuverSpec::new(
            Rotation::identity(),
            Vector3::new(0.05, 0.0, -0.02),
            exp_so3(&Vector3::new(0.3, -0.2, 0.4)),
            Vector3::new(0.0, 0.1, 0.0),
            12,
            0.2,
            InertiaModel::principal(2.0, 3.0, 4.5).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn zero_torque_gives_zero_multipliers() {
        let s = spec();
        let mut traj = solve(&s, &SolverOptions::default()).unwrap().trajectory;
        traj.torques.iter_mut().for_each(|t| *t = Vector3::zeros());
        let rep = multiplier_check(&traj, &s);
        assert!(rep
            .lambda1s
            .iter()
            .chain(&rep.lambda2s)
            .all(|v| *v == Vector3::zeros()));
        assert_eq!(rep.max_consistency_residual, 0.0);
    }

    #[test]
    fn transport_residual_is_h_times_stationarity() {
        let s = spec();
        let sol = solve(&s, &SolverOptions::default()).unwrap();
        let rep = multiplier_check(&sol.trajectory, &s);
        assert_eq!(rep.lambda2s.len(), 11);
        assert_eq!(rep.lambda1s.len(), 10);
        assert!(rep.max_consistency_residual < 1e-9);

        let mut x = sol.unknowns.clone();
        x.taus[5].x += 1e-3;
        let r = residual(&x, &s).unwrap();
        let stationarity = r[..3 * (12 - 3)]
            .chunks(3)
            .map(|c| Vector3::from_column_slice(c).norm())
            .fold(0.0, f64::max);
        let mut traj = sol.trajectory.clone();
        traj.torques[6].x += 1e-3;
        let perturbed = multiplier_check(&traj, &s);
        assert!(perturbed.max_consistency_residual > 1e-5);
        assert!((perturbed.max_consistency_residual - 0.2 * stationarity).abs() < 1e-9);
    }
}
