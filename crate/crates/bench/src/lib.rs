//! Fixtures shared by the benchmarks.

use std::f64::consts::FRAC_PI_3;

use lie_dmoc::liealg::{exp_so3, Rotation};
use lie_dmoc::optctrl::{initial_guess, ManeuverSpec};
use lie_dmoc::presets;
use nalgebra::Vector3;

/// Rest-to-rest rotation by `π/3` about `x` over `T = 12.8 s` in `n` steps.
pub fn rest_to_rest(n: usize) -> ManeuverSpec {
    ManeuverSpec::new(
        Rotation::identity(),
        Vector3::zeros(),
        exp_so3(&Vector3::new(FRAC_PI_3, 0.0, 0.0)),
        Vector3::zeros(),
        n,
        12.8 / n as f64,
        presets::reference_inertia(),
    )
    .expect("valid maneuver")
}

/// Flattened initial guess of [`rest_to_rest`].
pub fn start_point(spec: &ManeuverSpec) -> Vec<f64> {
    initial_guess(spec).expect("guess exists").to_flat()
}
