use nalgebra::{Matrix3, SymmetricEigen, Vector3};

use super::{hat, LieError};
use crate::scalar::Scalar;

/// Rigid-body inertia.
///
/// `j_op` is the symmetric positive-definite matrix `J` of the operator
/// `J(ξ) = Jξ + ξJ` on skew matrices. Acting on vectors the same operator is
/// the classical inertia tensor `J_d = tr(J)·I − J`, which is what every
/// vector-form computation uses.
#[derive(Debug, Clone, PartialEq)]
pub struct InertiaModel {
    j_op: Matrix3<f64>,
    j_classical: Matrix3<f64>,
    j_classical_inv: Matrix3<f64>,
}

impl InertiaModel {
    /// Builds the model from the operator matrix `J`.
    pub fn new(j_op: Matrix3<f64>) -> Result<Self, LieError> {
        let scale = j_op.amax().max(f64::MIN_POSITIVE);
        let asymmetry = (j_op - j_op.transpose()).amax();
        if asymmetry > 1e-12 * scale {
            return Err(LieError::NotSymmetric { asymmetry });
        }
        let j_op = (j_op + j_op.transpose()) * 0.5;
        let min_eigenvalue = SymmetricEigen::new(j_op).eigenvalues.min();
        if min_eigenvalue.is_nan() || min_eigenvalue <= 0.0 {
            return Err(LieError::NotPositiveDefinite { min_eigenvalue });
        }
        let j_classical = Matrix3::identity() * j_op.trace() - j_op;
        let j_classical_inv = j_classical
            .try_inverse()
            .ok_or(LieError::NotPositiveDefinite { min_eigenvalue })?;
        Ok(Self {
            j_op,
            j_classical,
            j_classical_inv,
        })
    }

    /// Builds the model from a classical inertia tensor `J_d`, inverting
    /// `J_d = tr(J)·I − J` to `J = ½tr(J_d)·I − J_d`.
    pub fn from_classical(j_classical: Matrix3<f64>) -> Result<Self, LieError> {
        Self::new(Matrix3::identity() * (0.5 * j_classical.trace()) - j_classical)
    }

    /// Classical tensor `diag(i1, i2, i3)`.
    pub fn principal(i1: f64, i2: f64, i3: f64) -> Result<Self, LieError> {
        Self::from_classical(Matrix3::from_diagonal(&Vector3::new(i1, i2, i3)))
    }

    pub fn j_op(&self) -> &Matrix3<f64> {
        &self.j_op
    }

    pub fn j_classical(&self) -> &Matrix3<f64> {
        &self.j_classical
    }

    pub fn j_classical_inv(&self) -> &Matrix3<f64> {
        &self.j_classical_inv
    }

    /// Momentum of angular velocity `v`: `J_d v`.
    #[inline]
    pub fn apply<T: Scalar>(&self, v: &Vector3<T>) -> Vector3<T> {
        self.j_classical.map(T::from_f64) * v
    }

    /// Angular velocity of momentum `p`: `J_d⁻¹ p`.
    #[inline]
    pub fn solve<T: Scalar>(&self, p: &Vector3<T>) -> Vector3<T> {
        self.j_classical_inv.map(T::from_f64) * p
    }

    /// The operator in matrix form, `J hat(v) + hat(v) J`.
    pub fn apply_matrix_form(&self, v: &Vector3<f64>) -> Matrix3<f64> {
        let h = hat(v);
        self.j_op * h + h * self.j_op
    }

    /// Eigen-decomposition of the classical tensor: principal moments and
    /// unit principal axes (as columns).
    pub fn principal_axes(&self) -> (Vector3<f64>, Matrix3<f64>) {
        let eig = SymmetricEigen::new(self.j_classical);
        (eig.eigenvalues, eig.eigenvectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn skewed_inertia() -> InertiaModel {
        InertiaModel::new(Matrix3::new(
            13.25, -7.80, -11.40, -7.80, 16.25, 4.71, -11.40, 4.71, 18.37,
        ))
        .unwrap()
    }

    #[test]
    fn identity_operator_doubles() {
        let j = InertiaModel::new(Matrix3::identity()).unwrap();
        let v = Vector3::new(1.0, -2.0, 0.5);
        assert_eq!(j.apply(&v), v * 2.0);
    }

    #[test]
    fn classical_tensor_from_operator() {
        let j = skewed_inertia();
        let expected = Matrix3::new(34.62, 7.80, 11.40, 7.80, 31.62, -4.71, 11.40, -4.71, 29.50);
        assert_abs_diff_eq!(*j.j_classical(), expected, epsilon = 1e-12);
    }

    #[test]
    fn matrix_and_vector_forms_agree() {
        let j = skewed_inertia();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let v = Vector3::new(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            );
            assert_abs_diff_eq!(hat(&j.apply(&v)), j.apply_matrix_form(&v), epsilon = 1e-12);
            assert_abs_diff_eq!(j.solve(&j.apply(&v)), v, epsilon = 1e-12);
        }
    }

    #[test]
    fn self_adjoint() {
        let j = skewed_inertia();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let xi = Vector3::new(rng.gen(), rng.gen(), rng.gen()) * 2.0;
            let om = Vector3::new(rng.gen(), rng.gen(), rng.gen()) * 2.0;
            assert_abs_diff_eq!(
                j.apply(&xi).dot(&om),
                j.apply(&om).dot(&xi),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        let not_pd = Matrix3::from_diagonal(&Vector3::new(1.0, 2.0, -0.5));
        assert!(matches!(
            InertiaModel::new(not_pd),
            Err(LieError::NotPositiveDefinite { .. })
        ));
        let mut asym = Matrix3::identity();
        asym[(0, 1)] = 0.5;
        assert!(matches!(
            InertiaModel::new(asym),
            Err(LieError::NotSymmetric { .. })
        ));
        // Violates the triangle inequality between principal moments.
        assert!(InertiaModel::principal(1.0, 1.0, 3.0).is_err());
    }

    #[test]
    fn principal_constructor_round_trips() {
        let j = InertiaModel::principal(2.0, 3.0, 4.0).unwrap();
        assert_abs_diff_eq!(
            *j.j_classical(),
            Matrix3::from_diagonal(&Vector3::new(2.0, 3.0, 4.0)),
            epsilon = 1e-14
        );
    }
}
