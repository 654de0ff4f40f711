//! The integrator restricted to rotations about a fixed axis (SO(2)).
//!
//! On SO(2) the bracket vanishes and the coadjoint action is trivial, so the
//! momentum update becomes explicit:
//!
//! ```text
//! θ_{k+1} = θ_k + h ω_k,          k = 0..N-1
//! ω_k     = ω_{k-1} + (h/I) τ_k,  k = 1..N-1
//! ```

/// Planar trajectory: `θ_0..θ_N`, `ω_0..ω_{N-1}`, `τ_0..τ_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarTrajectory {
    pub h: f64,
    pub thetas: Vec<f64>,
    pub omegas: Vec<f64>,
    pub torques: Vec<f64>,
}

pub fn so2_simulate(
    theta0: f64,
    omega0: f64,
    inertia: f64,
    torque: impl Fn(f64) -> f64,
    h: f64,
    n: usize,
) -> PlanarTrajectory {
    assert!(inertia > 0.0, "planar inertia must be positive");
    let torques: Vec<f64> = (0..=n).map(|k| torque(k as f64 * h)).collect();
    let mut thetas = Vec::with_capacity(n + 1);
    let mut omegas = Vec::with_capacity(n);
    thetas.push(theta0);
    let mut omega = omega0;
    for k in 0..n {
        if k > 0 {
            omega += h / inertia * torques[k];
        }
        omegas.push(omega);
        thetas.push(thetas[k] + h * omega);
    }
    PlanarTrajectory {
        h,
        thetas,
        omegas,
        torques,
    }
}

/// Planar body spun by `τ(t) = amplitude · sin(frequency · t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForcedSpinProblem {
    pub horizon: f64,
    pub inertia: f64,
    pub theta0: f64,
    pub omega0: f64,
    pub amplitude: f64,
    pub frequency: f64,
}

impl ForcedSpinProblem {
    /// `T = 10`, `I = 1`, `θ(0) = 3`, `ω(0) = 4`, `τ = sin(πt/2)`.
    pub fn reference() -> Self {
        Self {
            horizon: 10.0,
            inertia: 1.0,
            theta0: 3.0,
            omega0: 4.0,
            amplitude: 1.0,
            frequency: std::f64::consts::FRAC_PI_2,
        }
    }

    pub fn torque(&self, t: f64) -> f64 {
        self.amplitude * (self.frequency * t).sin()
    }

    /// Closed-form solution of `θ̇ = ω`, `ω̇ = τ/I`.
    pub fn exact(&self, t: f64) -> (f64, f64) {
        let c = self.amplitude / (self.inertia * self.frequency);
        let wt = self.frequency * t;
        let omega = self.omega0 + c * (1.0 - wt.cos());
        let theta = self.theta0 + self.omega0 * t + c * (t - wt.sin() / self.frequency);
        (theta, omega)
    }

    pub fn simulate(&self, n: usize) -> PlanarTrajectory {
        so2_simulate(
            self.theta0,
            self.omega0,
            self.inertia,
            |t| self.torque(t),
            self.horizon / n as f64,
            n,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarErrorRow {
    pub steps: usize,
    pub h: f64,
    /// `max_k |θ_k − θ(t_k)|`, k = 0..N.
    pub max_theta_error: f64,
    /// `max_k |ω_k − ω(t_k)|`, k = 0..N-1.
    pub max_omega_error: f64,
}

/// Discrete-vs-exact error for each step count in `steps`.
pub fn so2_error_study(problem: &ForcedSpinProblem, steps: &[usize]) -> Vec<PlanarErrorRow> {
    steps
        .iter()
        .map(|&n| {
            let traj = problem.simulate(n);
            let h = traj.h;
            let max_theta_error = traj
                .thetas
                .iter()
                .enumerate()
                .map(|(k, th)| (th - problem.exact(k as f64 * h).0).abs())
                .fold(0.0, f64::max);
            let max_omega_error = traj
                .omegas
                .iter()
                .enumerate()
                .map(|(k, w)| (w - problem.exact(k as f64 * h).1).abs())
                .fold(0.0, f64::max);
            PlanarErrorRow {
                steps: n,
                h,
                max_theta_error,
                max_omega_error,
            }
        })
        .collect()
}
