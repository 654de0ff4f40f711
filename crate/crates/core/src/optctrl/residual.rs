use nalgebra::Vector3;

use super::{ManeuverSpec, OptCtrlError, UnknownVector};
use crate::liealg::{exp_so3, log_so3, Rotation};
use crate::nlsolve::ResidualFunction;
use crate::scalar::Scalar;

/// The optimality system of a [`ManeuverSpec`] as a [`ResidualFunction`].
#[derive(Debug, Clone, Copy)]
pub struct ManeuverResidual<'a> {
    pub spec: &'a ManeuverSpec,
}

impl ResidualFunction for ManeuverResidual<'_> {
    type Error = OptCtrlError;

    fn dim(&self) -> usize {
        self.spec.unknown_dim()
    }

    fn eval<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>, OptCtrlError> {
        eval_generic(self.spec, x)
    }
}

/// Residual vector of `x`, blocks ordered stationarity, momentum, closure.
pub fn residual(x: &UnknownVector, spec: &ManeuverSpec) -> Result<Vec<f64>, OptCtrlError> {
    if x.steps() != spec.steps() || x.omegas.len() + 2 != spec.steps() {
        return Err(OptCtrlError::InvalidSpec(format!(
            "unknowns are for N = {}, maneuver has N = {}",
            x.steps(),
            spec.steps()
        )));
    }
    eval_generic(spec, &x.to_flat())
}

/// The closure block alone.
pub fn closure_residual(
    x: &UnknownVector,
    spec: &ManeuverSpec,
) -> Result<Vector3<f64>, OptCtrlError> {
    let r = residual(x, spec)?;
    let n = r.len();
    Ok(Vector3::new(r[n - 3], r[n - 2], r[n - 1]))
}

fn eval_generic<T: Scalar>(spec: &ManeuverSpec, x: &[T]) -> Result<Vec<T>, OptCtrlError> {
    let n = spec.steps();
    if x.len() != spec.unknown_dim() {
        return Err(OptCtrlError::InvalidSpec(format!(
            "expected {} unknowns, got {}",
            spec.unknown_dim(),
            x.len()
        )));
    }
    let h = T::from_f64(spec.h());
    let inv_h = T::from_f64(1.0 / spec.h());
    let inv_h2 = inv_h * inv_h;
    let j = &spec.inertia;
    let at = |i: usize| Vector3::new(x[3 * i], x[3 * i + 1], x[3 * i + 2]);

    // tau[k] for k = 0..N; tau[0] and tau[N] are structural zeros.
    let mut tau = Vec::with_capacity(n + 1);
    tau.push(Vector3::zeros());
    tau.extend((0..n - 1).map(at));
    tau.push(Vector3::zeros());

    // omega[k] for k = 0..N-1 with the prescribed ends.
    let mut omega = Vec::with_capacity(n);
    omega.push(spec.omega0.map(T::from_f64));
    omega.extend((0..n - 2).map(|i| at(n - 1 + i)));
    omega.push(spec.omega_nm1.map(T::from_f64));

    let g: Vec<Rotation<T>> = omega.iter().map(|w| exp_so3(&(w * h))).collect();
    let m: Vec<Vector3<T>> = omega.iter().map(|w| j.apply(w)).collect();

    let mut out = Vec::with_capacity(spec.unknown_dim());

    for k in 2..=n - 2 {
        let gk = g[k].matrix();
        let prev = g[k - 1].matrix().tr_mul(&tau[k - 1]);
        let cur = gk.tr_mul(&tau[k]);
        let second =
            j.apply(&prev) - j.apply(&tau[k]) - gk * j.apply(&cur) + gk * j.apply(&tau[k + 1]);
        let first = m[k - 1].cross(&prev) - gk * m[k].cross(&cur);
        let s = second * inv_h2 + first * inv_h;
        out.extend(s.iter().copied());
    }

    for k in 1..n {
        let carried = tau[k] * h + m[k - 1];
        let r = m[k] - g[k].matrix().tr_mul(&carried);
        out.extend(r.iter().copied());
    }

    let relative = spec.relative().lift::<T>();
    let end = g.iter().fold(relative, |acc, gk| &acc * gk);
    let closure = log_so3(&end)?;
    out.extend(closure.iter().copied());

    Ok(out)
}
