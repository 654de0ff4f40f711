//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All Lie-algebra primitives, the variational integrator residual and the
//! optimal-control residual are written once over [`Scalar`]. Evaluating them
//! with `f64` gives ordinary values; evaluating them with [`Complex64`] at a
//! point carrying a tiny imaginary perturbation gives complex-step
//! derivatives.
//!
//! The complex implementations of the transcendental functions use the
//! first-order expansion `f(a + ib) = f(a) + i·b·f'(a)`. For the step sizes
//! used by complex-step differentiation (`b ≲ 1e-20`) the neglected `O(b²)`
//! term is far below `f64` resolution, and the expansion avoids library
//! formulas (such as `acos` via `ln|w|`) that round the perturbation away.

use nalgebra::{ClosedAddAssign, ClosedDivAssign, ClosedMulAssign, ClosedSubAssign};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::Neg;

/// Field-like scalar with the handful of elementary functions the SO(3)
/// machinery needs.
pub trait Scalar:
    nalgebra::Scalar
    + Copy
    + Debug
    + Zero
    + One
    + ClosedAddAssign
    + ClosedSubAssign
    + ClosedMulAssign
    + ClosedDivAssign
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_f64(x: f64) -> Self;

    /// Real part; used only for branch decisions and norms, never for values
    /// that feed back into an analytic computation.
    fn re(self) -> f64;

    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn acos(self) -> Self;
    /// Four-quadrant `atan2(self, x)`.
    fn atan2(self, x: Self) -> Self;
}

impl Scalar for f64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn sin(self) -> Self {
        f64::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        f64::cos(self)
    }
    #[inline]
    fn acos(self) -> Self {
        f64::acos(self)
    }
    #[inline]
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
}

impl Scalar for Complex64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn re(self) -> f64 {
        self.re
    }
    #[inline]
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        if s == 0.0 {
            // Not differentiable at zero; callers guard this case with series.
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(s, self.im / (2.0 * s))
    }
    #[inline]
    fn sin(self) -> Self {
        Complex64::new(self.re.sin(), self.im * self.re.cos())
    }
    #[inline]
    fn cos(self) -> Self {
        Complex64::new(self.re.cos(), -self.im * self.re.sin())
    }
    #[inline]
    fn acos(self) -> Self {
        let a = self.re;
        Complex64::new(a.acos(), -self.im / (1.0 - a * a).sqrt())
    }
    #[inline]
    fn atan2(self, x: Self) -> Self {
        let (y0, x0) = (self.re, x.re);
        Complex64::new(
            y0.atan2(x0),
            (x0 * self.im - y0 * x.im) / (x0 * x0 + y0 * y0),
        )
    }
}

/// Lifts a real matrix or vector into scalar type `T`.
#[inline]
pub fn lift<T: Scalar, R: nalgebra::Dim, C: nalgebra::Dim>(
    m: &nalgebra::OMatrix<f64, R, C>,
) -> nalgebra::OMatrix<T, R, C>
where
    nalgebra::DefaultAllocator: nalgebra::allocator::Allocator<R, C>,
{
    m.map(T::from_f64)
}
