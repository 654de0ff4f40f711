//! Quick invariant suite behind `lie-dmoc verify`.

use std::f64::consts::PI;

use lie_dmoc::dynamics::{dlga_simulate, so2_error_study, RigidBodyState, ZeroTorque};
use lie_dmoc::liealg::{exp_so3, hat, log_so3, vee, Rotation};
use lie_dmoc::optctrl::{
    equivariance_transform, multiplier_check, residual, solve, ManeuverSpec, UnknownVector,
};
use lie_dmoc::presets;
use lie_dmoc::SolverOptions;
use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Check {
    pub name: &'static str,
    run: fn() -> Result<String, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const CHECKS: &[Check] = &[
    Check {
        name: "hat_vee",
        run: hat_vee,
    },
    Check {
        name: "exp_on_group",
        run: exp_on_group,
    },
    Check {
        name: "log_exp",
        run: log_exp,
    },
    Check {
        name: "free_body_momentum",
        run: free_body_momentum,
    },
    Check {
        name: "planar_convergence",
        run: planar_convergence,
    },
    Check {
        name: "identity_maneuver",
        run: identity_maneuver,
    },
    Check {
        name: "relative_equilibrium",
        run: relative_equilibrium,
    },
    Check {
        name: "equivariance",
        run: equivariance,
    },
    Check {
        name: "rest_to_rest",
        run: rest_to_rest,
    },
];

/// Runs every check whose name contains `filter`.
pub fn run_checks(filter: Option<&str>) -> Vec<Outcome> {
    CHECKS
        .iter()
        .filter(|c| filter.is_none_or(|f| c.name.contains(f)))
        .map(|c| {
            let (passed, detail) = match (c.run)() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Outcome {
                name: c.name,
                passed,
                detail,
            }
        })
        .collect()
}

fn random_vec(rng: &mut ChaCha8Rng, scale: f64) -> Vector3<f64> {
    Vector3::from_fn(|_, _| rng.gen_range(-scale..scale))
}

fn bound(name: &str, value: f64, tol: f64) -> Result<String, String> {
    let line = format!("{name} {value:.3e} (tol {tol:.0e})");
    if value <= tol {
        Ok(line)
    } else {
        Err(line)
    }
}

/// Rotations written to the shared logarithm test-vector file.
pub fn log_test_rotations() -> Vec<Rotation> {
    let mut out = vec![Rotation::identity()];
    let axis = Vector3::new(1.0, 2.0, 3.0).normalize();
    for angle in [
        1e-12,
        1e-9,
        1e-6,
        1e-3,
        0.5,
        1.0,
        2.0,
        3.0,
        PI - 1e-3,
        PI - 1e-5,
    ] {
        out.push(exp_so3(&(axis * angle)));
    }
    for e in [Vector3::x(), Vector3::y(), Vector3::z()] {
        out.push(exp_so3(&(e * (PI / 3.0))));
        out.push(exp_so3(&(e * -(PI - 1e-4))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let dir = random_vec(&mut rng, 1.0);
        let angle = rng.gen_range(0.0..PI - 1e-3);
        if dir.norm() > 1e-3 {
            out.push(exp_so3(&(dir.normalize() * angle)));
        }
    }
    out
}

fn hat_vee() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let v = random_vec(&mut rng, 10.0);
        let s = hat(&v);
        if vee(&s) != v || s + s.transpose() != nalgebra::Matrix3::zeros() {
            return Err(format!("round trip failed at {v:?}"));
        }
    }
    Ok("100 exact round trips".into())
}

fn exp_on_group() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let worst = (0..200)
        .map(|_| {
            let r = exp_so3(&random_vec(&mut rng, 10.0 / 3f64.sqrt()));
            r.orthogonality_error().max((r.det() - 1.0).abs())
        })
        .fold(0.0, f64::max);
    bound("max orthogonality/det error", worst, 1e-12)
}

fn log_exp() -> Result<String, String> {
    let worst = log_test_rotations()
        .iter()
        .map(|r| {
            let v = log_so3(r).map_err(|e| e.to_string())?;
            Ok((exp_so3(&v).matrix() - r.matrix()).amax())
        })
        .collect::<Result<Vec<f64>, String>>()?
        .into_iter()
        .fold(0.0, f64::max);
    bound("max |exp(log R) - R|", worst, 1e-10)
}

fn free_body_momentum() -> Result<String, String> {
    let j = presets::reference_inertia();
    let init = RigidBodyState::new(
        exp_so3(&Vector3::new(0.3, -0.2, 0.1)),
        Vector3::new(0.4, -0.3, 0.5),
    );
    let traj = dlga_simulate(&init, &ZeroTorque, &j, 0.05, 400).map_err(|e| e.to_string())?;
    // Spatial momentum R_{k+1} J_d(Ω_k) is conserved without torque.
    let spatial: Vec<Vector3<f64>> = traj
        .omegas
        .iter()
        .enumerate()
        .map(|(k, w)| traj.attitudes[k + 1].matrix() * j.apply(w))
        .collect();
    let drift = spatial
        .iter()
        .map(|p| (p - spatial[0]).amax())
        .fold(0.0, f64::max);
    let scale = spatial[0].amax();
    bound("relative spatial momentum drift", drift / scale, 1e-12)?;
    bound("orthogonality error", traj.max_orthogonality_error(), 1e-12)
        .map(|s| format!("drift {:.3e}, {s}", drift / scale))
}

fn planar_convergence() -> Result<String, String> {
    let rows = so2_error_study(&presets::planar_study(), &presets::PLANAR_STEPS);
    let errs: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.3e}", r.max_theta_error))
        .collect();
    let line = format!("max theta errors {}", errs.join(" > "));
    let decreasing = rows.windows(2).all(|w| {
        w[1].max_theta_error < w[0].max_theta_error && w[1].max_omega_error < w[0].max_omega_error
    });
    if decreasing {
        Ok(line)
    } else {
        Err(line)
    }
}

fn identity_maneuver() -> Result<String, String> {
    let z = Vector3::zeros();
    let spec = ManeuverSpec::new(
        Rotation::identity(),
        z,
        Rotation::identity(),
        z,
        presets::MANEUVER_STEPS,
        presets::MANEUVER_STEP,
        presets::reference_inertia(),
    )
    .map_err(|e| e.to_string())?;
    let sol = solve(&spec, &SolverOptions::default()).map_err(|e| e.to_string())?;
    let line = format!("cost {}, iterations {}", sol.cost, sol.iterations);
    if sol.cost == 0.0 && sol.iterations <= 1 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn relative_equilibrium() -> Result<String, String> {
    let j = presets::reference_inertia();
    let spec = presets::principal_spin(&j, 2, 0.2, exp_so3(&Vector3::new(0.2, 0.1, -0.3)), 32, 0.1);
    let sol = solve(&spec, &SolverOptions::default()).map_err(|e| e.to_string())?;
    bound("cost", sol.cost, 1e-12)
}

fn equivariance() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let spec = presets::small_rotation(Vector3::new(0.2, 1.0, -0.5), 0.7);
    let x: Vec<f64> = (0..spec.unknown_dim())
        .map(|_| rng.gen_range(-0.2..0.2))
        .collect();
    let x = UnknownVector::from_flat(&x, spec.steps()).map_err(|e| e.to_string())?;
    let q = exp_so3(&random_vec(&mut rng, 2.0));
    let moved = equivariance_transform(&q, &spec);
    let a = residual(&x, &spec).map_err(|e| e.to_string())?;
    let b = residual(&x, &moved).map_err(|e| e.to_string())?;
    let diff = a
        .iter()
        .zip(&b)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max);
    bound("residual difference under left rotation", diff, 1e-12)
}

fn rest_to_rest() -> Result<String, String> {
    let spec = presets::rest_to_rest();
    let sol = solve(&spec, &SolverOptions::default()).map_err(|e| e.to_string())?;
    let mult = multiplier_check(&sol.trajectory, &spec).max_consistency_residual;
    bound("residual", sol.residual_norm, 1e-9)?;
    bound("endpoint error", sol.endpoint_error, 1e-8)?;
    bound("multiplier residual", mult, 1e-6).map(|s| format!("cost {:.6}, {s}", sol.cost))
}
