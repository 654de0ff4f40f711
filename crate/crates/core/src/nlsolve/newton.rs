use nalgebra::DVector;

use super::{inf_norm, jacobian, NewtonError, ResidualFunction, SolveReport, SolverOptions};

/// Damped Newton iteration `x ← x + αΔ`, `J Δ = −F(x)`.
///
/// `J` is factored by dense LU with partial pivoting. The step length `α`
/// starts at 1 and is multiplied by `options.backtrack_factor` until the
/// residual ∞-norm strictly decreases; a trial point whose evaluation fails
/// counts as no decrease.
pub fn newton_solve<F: ResidualFunction>(
    f: &F,
    x0: &[f64],
    options: &SolverOptions,
) -> Result<SolveReport, NewtonError<F::Error>> {
    options.validate().map_err(NewtonError::InvalidOptions)?;
    if x0.len() != f.dim() {
        return Err(NewtonError::DimensionMismatch {
            expected: f.dim(),
            found: x0.len(),
        });
    }

    let mut x = x0.to_vec();
    let mut fx = f.eval(&x).map_err(NewtonError::Residual)?;
    let mut norm = inf_norm(&fx);
    let mut report = SolveReport {
        root: x.clone(),
        residual_norm: norm,
        iterations: 0,
        converged: false,
        damping_events: 0,
        residual_history: vec![norm],
    };

    loop {
        if norm <= options.tol {
            report.converged = true;
            return Ok(report);
        }
        if report.iterations >= options.max_iter {
            return Err(NewtonError::MaxIterations { best: report });
        }

        let jac =
            jacobian(f, &x, options.jacobian, options.step_eps).map_err(NewtonError::Residual)?;
        let scale = jac.amax();
        let lu = jac.lu();
        let pivot = lu.u().diagonal().amin();
        if pivot.is_nan() || pivot <= 1e-14 * scale {
            return Err(NewtonError::SingularJacobian {
                iteration: report.iterations,
                pivot,
                scale,
                best: report,
            });
        }
        let rhs = DVector::from_iterator(fx.len(), fx.iter().map(|v| -v));
        let Some(delta) = lu.solve(&rhs) else {
            return Err(NewtonError::SingularJacobian {
                iteration: report.iterations,
                pivot,
                scale,
                best: report,
            });
        };

        let mut alpha = 1.0;
        let mut accepted = None;
        for halving in 0..=options.max_halvings {
            let trial: Vec<f64> = x
                .iter()
                .zip(delta.iter())
                .map(|(a, d)| a + alpha * d)
                .collect();
            if let Ok(ft) = f.eval(&trial) {
                let tn = inf_norm(&ft);
                if tn < norm {
                    report.damping_events += halving;
                    accepted = Some((trial, ft, tn));
                    break;
                }
            }
            alpha *= options.backtrack_factor;
        }
        let Some((xn, fxn, nn)) = accepted else {
            report.damping_events += options.max_halvings;
            return Err(NewtonError::NoProgress {
                halvings: options.max_halvings,
                best: report,
            });
        };

        x = xn;
        fx = fxn;
        norm = nn;
        report.iterations += 1;
        report.root.clone_from(&x);
        report.residual_norm = norm;
        report.residual_history.push(norm);
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_systems::{Shift, Square, Trig};
    use super::super::JacobianMethod;
    use super::*;
    use std::convert::Infallible;

    use crate::scalar::Scalar;

    #[test]
    fn linear_system_in_one_step() {
        let c = vec![1.5, -2.0, 3.25];
        let r = newton_solve(&Shift(c.clone()), &[0.0; 3], &SolverOptions::default()).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 1);
        for (a, b) in r.root.iter().zip(&c) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn already_converged_start_takes_no_steps() {
        let r = newton_solve(&Shift(vec![1.0]), &[1.0], &SolverOptions::default()).unwrap();
        assert_eq!(r.iterations, 0);
        assert!(r.converged);
    }

    #[test]
    fn textbook_square_root_converges_quadratically() {
        let opts = SolverOptions::default().with_tol(1e-15);
        let r = newton_solve(&Square(vec![4.0]), &[3.0], &opts).unwrap();
        assert!((r.root[0] - 2.0).abs() < 1e-15);
        // Errors e_{j+1} ≈ e_j² / (2·2): ratios r_{j+1}/r_j² stay bounded.
        let h = &r.residual_history;
        for w in h.windows(2).filter(|w| w[1] > 0.0 && w[0] < 1.0) {
            assert!(w[1] <= 1.0 * w[0] * w[0], "history {h:?}");
        }
    }

    #[test]
    fn fd_jacobian_also_converges() {
        let opts = SolverOptions {
            jacobian: JacobianMethod::CentralDifference,
            ..SolverOptions::default()
        };
        let r = newton_solve(&Trig, &[0.3, 0.8], &opts).unwrap();
        assert!((r.root[0] - std::f64::consts::FRAC_PI_6).abs() < 1e-8);
        assert!((r.root[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn deterministic_reports() {
        let a = newton_solve(&Trig, &[0.3, 0.8], &SolverOptions::default()).unwrap();
        let b = newton_solve(&Trig, &[0.3, 0.8], &SolverOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    struct NoRoot;
    impl ResidualFunction for NoRoot {
        type Error = Infallible;
        fn dim(&self) -> usize {
            1
        }
        fn eval<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>, Infallible> {
            Ok(vec![x[0] * x[0] + T::one()])
        }
    }

    #[test]
    fn failure_modes() {
        // Jacobian 2x vanishes at the start point.
        let err = newton_solve(&NoRoot, &[0.0], &SolverOptions::default()).unwrap_err();
        assert!(matches!(err, NewtonError::SingularJacobian { .. }), "{err}");
        let err = newton_solve(&NoRoot, &[0.5], &SolverOptions::default()).unwrap_err();
        assert!(
            matches!(
                err,
                NewtonError::NoProgress { .. } | NewtonError::SingularJacobian { .. }
            ),
            "{err}"
        );
        let opts = SolverOptions::default().with_max_iter(1).with_tol(1e-300);
        let err = newton_solve(&Square(vec![4.0]), &[3.0], &opts).unwrap_err();
        assert!(matches!(err, NewtonError::MaxIterations { .. }));
        assert!(err.best().unwrap().residual_norm < 5.0);
        let err = newton_solve(&Square(vec![4.0]), &[3.0, 1.0], &opts).unwrap_err();
        assert!(matches!(err, NewtonError::DimensionMismatch { .. }));
    }
}
