//! Independent oracles shared by the integration and acceptance tests.

#![allow(dead_code)]

use lie_dmoc::dynamics::dlga_step;
use lie_dmoc::liealg::{exp_so3, log_so3};
use lie_dmoc::optctrl::ManeuverSpec;
use nalgebra::{DMatrix, DVector, Vector3};

/// Central-difference gradient.
pub fn fd_gradient(f: &dyn Fn(&DVector<f64>) -> f64, x: &DVector<f64>) -> DVector<f64> {
    DVector::from_fn(x.len(), |i, _| {
        let step = 1e-6 * (1.0 + x[i].abs());
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[i] += step;
        xm[i] -= step;
        (f(&xp) - f(&xm)) / (xp[i] - xm[i])
    })
}

/// BFGS with Armijo backtracking and finite-difference gradients.
pub fn bfgs(
    f: &dyn Fn(&DVector<f64>) -> f64,
    x0: DVector<f64>,
    gtol: f64,
    max_iter: usize,
) -> DVector<f64> {
    let n = x0.len();
    let mut x = x0;
    let mut fx = f(&x);
    let mut g = fd_gradient(f, &x);
    let mut hinv = DMatrix::<f64>::identity(n, n);
    for _ in 0..max_iter {
        if g.amax() < gtol {
            break;
        }
        let mut d = -(&hinv * &g);
        if d.dot(&g) >= 0.0 {
            hinv = DMatrix::identity(n, n);
            d = -g.clone();
        }
        let slope = d.dot(&g);
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let xt = &x + &d * alpha;
            let ft = f(&xt);
            if ft <= fx + 1e-4 * alpha * slope {
                accepted = Some((xt, ft));
                break;
            }
            alpha *= 0.5;
        }
        let Some((xn, fnew)) = accepted else { break };
        let gn = fd_gradient(f, &xn);
        let s = &xn - &x;
        let y = &gn - &g;
        let sy = s.dot(&y);
        if sy > 1e-14 * s.norm() * y.norm() {
            let rho = 1.0 / sy;
            let eye = DMatrix::<f64>::identity(n, n);
            let a = &eye - &s * y.transpose() * rho;
            let b = &eye - &y * s.transpose() * rho;
            hinv = &a * &hinv * &b + &s * s.transpose() * rho;
        }
        x = xn;
        fx = fnew;
        g = gn;
    }
    x
}

/// Terminal constraint violation `(Ω_{N-1} − Ω_{N-1}*, log(R_Nᵀ R_N*))` of
/// the torques `τ_1..τ_{N-1}` (flattened), by forward simulation; `None`
/// if a step fails or the end attitude is out of the logarithm's range.
pub fn terminal_defect(spec: &ManeuverSpec, taus: &DVector<f64>) -> Option<DVector<f64>> {
    let n = spec.steps();
    let h = spec.h();
    let mut omega = spec.omega0;
    let mut r = *spec.r0();
    for k in 1..n {
        r = r * exp_so3(&(omega * h));
        let tau = Vector3::new(
            taus[3 * (k - 1)],
            taus[3 * (k - 1) + 1],
            taus[3 * (k - 1) + 2],
        );
        omega = dlga_step(&omega, &tau, &spec.inertia, h).ok()?;
    }
    r = r * exp_so3(&(omega * h));
    let dw = omega - spec.omega_nm1;
    let dr = log_so3(&r.tr_mul(spec.r_n())).ok()?;
    Some(DVector::from_iterator(
        6,
        dw.iter().chain(dr.iter()).copied(),
    ))
}

pub struct OracleResult {
    pub taus: Vec<Vector3<f64>>,
    pub cost: f64,
    pub defect: f64,
}

/// Minimizes `½ Σ ‖τ_k‖²` subject to the terminal constraints by an
/// augmented Lagrangian over the torques alone.
pub fn penalty_oracle(spec: &ManeuverSpec) -> OracleResult {
    let m = 3 * (spec.steps() - 1);
    let mut x = DVector::zeros(m);
    let mut lambda = DVector::<f64>::zeros(6);
    let mu = 1e5;
    for _ in 0..60 {
        let lam = lambda.clone();
        let objective = |t: &DVector<f64>| match terminal_defect(spec, t) {
            Some(c) => 0.5 * t.dot(t) + lam.dot(&c) + 0.5 * mu * c.dot(&c),
            None => f64::INFINITY,
        };
        // Central differences leave gradient noise near 1e-9 here.
        x = bfgs(&objective, x, 1e-8, 500);
        let c = terminal_defect(spec, &x).expect("accepted iterates are feasible");
        lambda += &c * mu;
        if c.amax() < 1e-10 {
            break;
        }
    }
    let defect = terminal_defect(spec, &x).expect("feasible").amax();
    OracleResult {
        taus: x
            .as_slice()
            .chunks(3)
            .map(Vector3::from_column_slice)
            .collect(),
        cost: 0.5 * x.dot(&x),
        defect,
    }
}
