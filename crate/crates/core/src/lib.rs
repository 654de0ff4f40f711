//! Structure-preserving rigid-body attitude dynamics and discrete optimal
//! attitude control on SO(3).
//!
//! * [`liealg`]: hat/vee, exponential and logarithm, (co)adjoint actions,
//!   the inertia operator.
//! * [`dynamics`]: the Lie group variational integrator, its planar
//!   specialization, an RK4 reference for the continuous equations and
//!   vector-space symplectic Euler / Störmer–Verlet.
//! * [`nlsolve`]: damped Newton with complex-step Jacobians.
//! * [`optctrl`]: the minimum-torque two-point boundary value problem,
//!   solved as a square nonlinear system in torques and angular velocities.

pub mod dynamics;
pub mod liealg;
pub mod nlsolve;
pub mod optctrl;
pub mod presets;
pub mod scalar;

pub use liealg::{AlgebraVector, InertiaModel, LieError, Rotation};
pub use nlsolve::{SolveReport, SolverOptions};
pub use scalar::Scalar;
