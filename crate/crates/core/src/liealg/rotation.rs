use nalgebra::{Matrix3, Vector3};
use std::ops::Mul;

use super::LieError;
use crate::scalar::Scalar;

/// An attitude, stored as an explicit 3×3 matrix.
///
/// Values are produced by [`exp_so3`](super::exp_so3) and products of
/// rotations; nothing in the crate re-orthonormalizes them, so
/// [`orthogonality_error`](Rotation::orthogonality_error) measures the true
/// accumulated drift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation<T: Scalar = f64> {
    m: Matrix3<T>,
}

impl<T: Scalar> Rotation<T> {
    pub fn identity() -> Self {
        Self {
            m: Matrix3::identity(),
        }
    }

    /// Wraps a matrix without checking that it is a rotation.
    #[inline]
    pub fn from_matrix_unchecked(m: Matrix3<T>) -> Self {
        Self { m }
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix3<T> {
        &self.m
    }

    #[inline]
    pub fn into_inner(self) -> Matrix3<T> {
        self.m
    }

    /// Inverse rotation.
    #[inline]
    pub fn transpose(&self) -> Self {
        Self {
            m: self.m.transpose(),
        }
    }

    /// `selfᵀ · other` without forming the transpose.
    #[inline]
    pub fn tr_mul(&self, other: &Self) -> Self {
        Self {
            m: self.m.tr_mul(&other.m),
        }
    }

    /// `‖mᵀm − I‖_F` of the real part.
    pub fn orthogonality_error(&self) -> f64 {
        let m = self.m.map(|x| x.re());
        (m.transpose() * m - Matrix3::identity()).norm()
    }

    pub fn det(&self) -> f64 {
        self.m.map(|x| x.re()).determinant()
    }
}

impl Rotation<f64> {
    /// Accepts `m` if it is orthogonal with unit determinant to within `tol`.
    pub fn from_matrix(m: Matrix3<f64>, tol: f64) -> Result<Self, LieError> {
        let r = Self { m };
        let orthogonality = r.orthogonality_error();
        let det = r.det();
        if !(orthogonality <= tol && (det - 1.0).abs() <= tol) {
            return Err(LieError::NotARotation { orthogonality, det });
        }
        Ok(r)
    }

    /// Promotes to another scalar type with zero perturbation.
    pub fn lift<T: Scalar>(&self) -> Rotation<T> {
        Rotation {
            m: self.m.map(T::from_f64),
        }
    }
}

impl<T: Scalar> Default for Rotation<T> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<T: Scalar> Mul for Rotation<T> {
    type Output = Rotation<T>;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self { m: self.m * rhs.m }
    }
}

impl<T: Scalar> Mul<&Rotation<T>> for &Rotation<T> {
    type Output = Rotation<T>;
    #[inline]
    fn mul(self, rhs: &Rotation<T>) -> Rotation<T> {
        Rotation { m: self.m * rhs.m }
    }
}

impl<T: Scalar> Mul<Vector3<T>> for &Rotation<T> {
    type Output = Vector3<T>;
    #[inline]
    fn mul(self, rhs: Vector3<T>) -> Vector3<T> {
        self.m * rhs
    }
}
