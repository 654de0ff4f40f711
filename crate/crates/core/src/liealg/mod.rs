//! SO(3) and so(3) in vector form.
//!
//! The Lie algebra so(3) is identified with ℝ³ through the hat map and its
//! dual so*(3) with ℝ³ through the ordinary dot product. Under these
//! identifications
//!
//! * `[û, v̂] = (u × v)^`
//! * `Ad_R v = R v` and `Ad*_R p = Rᵀ p`
//! * `ad*_u p = p × u`
//!
//! Every function here is generic over [`Scalar`] so the same code path is
//! used for plain evaluation and for complex-step differentiation. The small
//! angle branches of [`exp_so3`] and [`log_so3`] use truncated series so the
//! functions stay analytic at the origin.

mod inertia;
mod rotation;

pub use inertia::InertiaModel;
pub use rotation::Rotation;

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

use crate::scalar::Scalar;

/// A 3-vector read as an element of so(3) or so*(3).
pub type AlgebraVector<T = f64> = Vector3<T>;

/// Largest rotation angle accepted by [`log_so3`].
pub const LOG_ANGLE_LIMIT: f64 = std::f64::consts::PI - 1e-6;

const EXP_SERIES_THRESHOLD_SQ: f64 = 1e-16;
const LOG_SERIES_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("rotation angle {angle} is too close to pi for a well-conditioned logarithm")]
    AngleNearPi { angle: f64 },
    #[error("inertia matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("inertia matrix is not positive definite (smallest eigenvalue {min_eigenvalue})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("matrix is not a rotation (orthogonality error {orthogonality:e}, det {det})")]
    NotARotation { orthogonality: f64, det: f64 },
}

/// Maps a 3-vector to the skew-symmetric matrix with `hat(u) w = u × w`.
#[inline]
pub fn hat<T: Scalar>(v: &Vector3<T>) -> Matrix3<T> {
    let z = T::zero();
    Matrix3::new(
        z, -v[2], v[1], //
        v[2], z, -v[0], //
        -v[1], v[0], z,
    )
}

/// Inverse of [`hat`]; only the antisymmetric part of `s` is read.
#[inline]
pub fn vee<T: Scalar>(s: &Matrix3<T>) -> Vector3<T> {
    let half = T::from_f64(0.5);
    Vector3::new(
        (s[(2, 1)] - s[(1, 2)]) * half,
        (s[(0, 2)] - s[(2, 0)]) * half,
        (s[(1, 0)] - s[(0, 1)]) * half,
    )
}

/// Rodrigues exponential `exp: so(3) → SO(3)`.
pub fn exp_so3<T: Scalar>(v: &Vector3<T>) -> Rotation<T> {
    let theta_sq = v.dot(v);
    let (a, b) = if theta_sq.re() < EXP_SERIES_THRESHOLD_SQ {
        // sinθ/θ and (1 - cosθ)/θ² to fourth order.
        let t2 = theta_sq;
        let t4 = t2 * t2;
        (
            T::one() - t2 / T::from_f64(6.0) + t4 / T::from_f64(120.0),
            T::from_f64(0.5) - t2 / T::from_f64(24.0) + t4 / T::from_f64(720.0),
        )
    } else {
        let theta = theta_sq.sqrt();
        let half = theta * T::from_f64(0.5);
        let sinc_half = half.sin() / half;
        // Half-angle form of (1 - cosθ)/θ² avoids cancellation for small θ.
        (
            theta.sin() / theta,
            T::from_f64(0.5) * sinc_half * sinc_half,
        )
    };
    let k = hat(v);
    let k2 = k * k;
    Rotation::from_matrix_unchecked(Matrix3::identity() + k * a + k2 * b)
}

/// Rotation angle of `r` in `[0, π]`, computed in real arithmetic.
pub fn rotation_angle<T: Scalar>(r: &Rotation<T>) -> f64 {
    let m = r.matrix();
    let c = 0.5 * (m[(0, 0)].re() + m[(1, 1)].re() + m[(2, 2)].re() - 1.0);
    c.clamp(-1.0, 1.0).acos()
}

/// Principal logarithm `log: SO(3) → so(3)`.
///
/// Fails with [`LieError::AngleNearPi`] when the rotation angle exceeds
/// [`LOG_ANGLE_LIMIT`], where the axis is numerically ill-determined.
pub fn log_so3<T: Scalar>(r: &Rotation<T>) -> Result<Vector3<T>, LieError> {
    let angle = rotation_angle(r);
    if angle > LOG_ANGLE_LIMIT {
        return Err(LieError::AngleNearPi { angle });
    }
    let m = r.matrix();
    // w = sinθ · axis
    let w = vee(m);
    if angle < LOG_SERIES_THRESHOLD {
        let s2 = w.dot(&w);
        let factor = T::one() + s2 / T::from_f64(6.0) + s2 * s2 * T::from_f64(3.0 / 40.0);
        return Ok(w * factor);
    }
    // atan2 keeps θ/sinθ accurate near π, where acos(c) loses half the digits.
    let c = (m[(0, 0)] + m[(1, 1)] + m[(2, 2)] - T::one()) * T::from_f64(0.5);
    let s = w.dot(&w).sqrt();
    let theta = s.atan2(c);
    Ok(w * (theta / s))
}

/// `Ad_R v = R v`.
#[inline]
pub fn adjoint<T: Scalar>(r: &Rotation<T>, v: &Vector3<T>) -> Vector3<T> {
    r.matrix() * v
}

/// `Ad*_R p = Rᵀ p`, so that `⟨Ad*_R p, v⟩ = ⟨p, Ad_R v⟩`.
#[inline]
pub fn coadjoint<T: Scalar>(r: &Rotation<T>, p: &Vector3<T>) -> Vector3<T> {
    r.matrix().tr_mul(p)
}

/// Lie bracket `[u, v] = u × v`.
#[inline]
pub fn bracket<T: Scalar>(u: &Vector3<T>, v: &Vector3<T>) -> Vector3<T> {
    u.cross(v)
}

/// `ad*_u p = p × u`.
#[inline]
pub fn ad_star<T: Scalar>(u: &Vector3<T>, p: &Vector3<T>) -> Vector3<T> {
    p.cross(u)
}

/// Dual pairing `⟨p, v⟩` between so*(3) and so(3).
#[inline]
pub fn pairing<T: Scalar>(p: &Vector3<T>, v: &Vector3<T>) -> T {
    p.dot(v)
}

/// Squared norm induced by the Killing-form inner product `-½ Tr(x̂ᵀ ŷ)`
/// after the dot-product identification, i.e. `p · p`.
#[inline]
pub fn pairing_norm_sq<T: Scalar>(p: &Vector3<T>) -> T {
    p.dot(p)
}

/// Curvature of the bi-invariant metric, `R(x, y) z = ¼ [[x, y], z]`.
#[inline]
pub fn curvature<T: Scalar>(x: &Vector3<T>, y: &Vector3<T>, z: &Vector3<T>) -> Vector3<T> {
    x.cross(y).cross(z) * T::from_f64(0.25)
}
