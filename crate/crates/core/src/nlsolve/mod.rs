//! Damped Newton root finding with complex-step Jacobians.
//!
//! Residuals implement [`ResidualFunction`], whose evaluation is generic over
//! [`Scalar`]. The Jacobian is assembled column by column as
//! `Im[F(x + iεe_k)]/ε`, which has no subtractive cancellation, so ε can be
//! taken far below machine epsilon. A central-difference Jacobian is kept as
//! an independent cross-check.

mod jacobian;
mod newton;

pub use jacobian::{jacobian, jacobian_complex_step, jacobian_fd};
pub use newton::newton_solve;

use thiserror::Error;

use crate::scalar::Scalar;

/// A square nonlinear system `F: ℝⁿ → ℝⁿ`.
///
/// Evaluation must be pure and deterministic, and analytic along coordinate
/// directions so the complex-step derivative is meaningful.
pub trait ResidualFunction: Sync {
    type Error: std::error::Error + Send + Sync + 'static;

    fn dim(&self) -> usize;

    fn eval<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>, Self::Error>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobianMethod {
    ComplexStep,
    CentralDifference,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Convergence threshold on `‖F‖∞`.
    pub tol: f64,
    pub max_iter: usize,
    /// Perturbation used by the Jacobian; ignored by central differences,
    /// which scale their own step.
    pub step_eps: f64,
    pub jacobian: JacobianMethod,
    pub backtrack_factor: f64,
    pub max_halvings: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iter: 100,
            step_eps: 1e-100,
            jacobian: JacobianMethod::ComplexStep,
            backtrack_factor: 0.5,
            max_halvings: 30,
        }
    }
}

impl SolverOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(format!("tol must be positive, got {}", self.tol));
        }
        if self.max_iter < 1 {
            return Err("max_iter must be at least 1".into());
        }
        if self.step_eps.is_nan() || self.step_eps <= 0.0 {
            return Err(format!("step_eps must be positive, got {}", self.step_eps));
        }
        if !(self.backtrack_factor > 0.0 && self.backtrack_factor < 1.0) {
            return Err(format!(
                "backtrack_factor must lie in (0, 1), got {}",
                self.backtrack_factor
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub root: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub damping_events: usize,
    /// `‖F‖∞` at the start point and after each accepted step.
    pub residual_history: Vec<f64>,
}

#[derive(Debug, Error)]
pub enum NewtonError<E: std::error::Error + 'static> {
    #[error("invalid solver options: {0}")]
    InvalidOptions(String),
    #[error(
        "dimension mismatch: system has {expected} equations, start point has {found} entries"
    )]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singular Jacobian at iteration {iteration} (pivot {pivot:e}, scale {scale:e})")]
    SingularJacobian {
        iteration: usize,
        pivot: f64,
        scale: f64,
        best: SolveReport,
    },
    #[error("line search made no progress after {halvings} halvings (residual {}, iteration {})", best.residual_norm, best.iterations)]
    NoProgress { halvings: usize, best: SolveReport },
    #[error("no convergence within {} iterations (residual {})", best.iterations, best.residual_norm)]
    MaxIterations { best: SolveReport },
    #[error("residual evaluation failed: {0}")]
    Residual(#[source] E),
}

impl<E: std::error::Error + 'static> NewtonError<E> {
    /// Best iterate reached before the failure, when there was one.
    pub fn best(&self) -> Option<&SolveReport> {
        match self {
            Self::SingularJacobian { best, .. }
            | Self::NoProgress { best, .. }
            | Self::MaxIterations { best } => Some(best),
            _ => None,
        }
    }
}

#[inline]
pub(crate) fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}
