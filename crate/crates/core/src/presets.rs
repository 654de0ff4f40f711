//! Reference problems: the inertia and maneuvers used in the examples and
//! the acceptance suite.

use nalgebra::{Matrix3, Vector3};
use std::f64::consts::PI;

use crate::dynamics::ForcedSpinProblem;
use crate::liealg::{exp_so3, InertiaModel, Rotation};
use crate::optctrl::ManeuverSpec;

/// Step count of the reference maneuvers.
pub const MANEUVER_STEPS: usize = 128;
/// Step size of the reference maneuvers, giving `T = 12.8 s`.
pub const MANEUVER_STEP: f64 = 0.1;

/// The reference inertia, read as the operator matrix `J` of
/// `J(ξ) = Jξ + ξJ`.
pub fn reference_inertia() -> InertiaModel {
    InertiaModel::new(Matrix3::new(
        13.25, -7.80, -11.40, //
        -7.80, 16.25, 4.71, //
        -11.40, 4.71, 18.37,
    ))
    .expect("reference inertia is symmetric positive definite")
}

/// Rest to rest, `π/3` about `x`.
pub fn rest_to_rest() -> ManeuverSpec {
    ManeuverSpec::new(
        Rotation::identity(),
        Vector3::zeros(),
        exp_so3(&Vector3::new(PI / 3.0, 0.0, 0.0)),
        Vector3::zeros(),
        MANEUVER_STEPS,
        MANEUVER_STEP,
        reference_inertia(),
    )
    .expect("valid maneuver")
}

/// From rest, `π/6` about `x`, ending at `Ω_{N-1} = (0.3, 0.2, 0.3)`.
pub fn slew_up() -> ManeuverSpec {
    ManeuverSpec::new(
        Rotation::identity(),
        Vector3::zeros(),
        exp_so3(&Vector3::new(PI / 6.0, 0.0, 0.0)),
        Vector3::new(0.3, 0.2, 0.3),
        MANEUVER_STEPS,
        MANEUVER_STEP,
        reference_inertia(),
    )
    .expect("valid maneuver")
}

/// Rest to rest by `angle` about `axis` (normalized), `N = 5`, `h = 1`.
pub fn small_rotation(axis: Vector3<f64>, angle: f64) -> ManeuverSpec {
    ManeuverSpec::new(
        Rotation::identity(),
        Vector3::zeros(),
        exp_so3(&(axis.normalize() * angle)),
        Vector3::zeros(),
        5,
        1.0,
        reference_inertia(),
    )
    .expect("valid maneuver")
}

/// Steady spin at rate `rate` about principal axis `axis_index` (0..3) of
/// `inertia`, starting from `r0`. The boundary data are those of the free
/// relative equilibrium, so the optimal torque is zero.
pub fn principal_spin(
    inertia: &InertiaModel,
    axis_index: usize,
    rate: f64,
    r0: Rotation,
    n: usize,
    h: f64,
) -> ManeuverSpec {
    let (_, axes) = inertia.principal_axes();
    let e: Vector3<f64> = axes.column(axis_index).into();
    let omega = e * rate;
    let r_n = r0 * exp_so3(&(omega * (n as f64 * h)));
    ManeuverSpec::new(r0, omega, r_n, omega, n, h, inertia.clone()).expect("valid maneuver")
}

/// The planar forced spin used for the first-order error study.
pub fn planar_study() -> ForcedSpinProblem {
    ForcedSpinProblem::reference()
}

/// Step counts of the planar error study.
pub const PLANAR_STEPS: [usize; 3] = [1000, 1500, 2000];
