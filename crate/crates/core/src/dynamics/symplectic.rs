//! Symplectic Euler and Störmer–Verlet for separable Hamiltonians
//! `H(q, p) = ½ pᵀ M⁻¹ p + V(q)` on a vector space.
//!
//! Symplectic Euler is the vector-space form of the Lie group integrator in
//! [`super::dlga_simulate`]; these routines exist to check its order and
//! near-conservation properties against Störmer–Verlet.

use nalgebra::{DMatrix, DVector};

/// `p' = p − h ∇V(q)`, `q' = q + h M⁻¹ p'`.
pub fn symplectic_euler_step(
    q: &DVector<f64>,
    p: &DVector<f64>,
    h: f64,
    grad_v: impl Fn(&DVector<f64>) -> DVector<f64>,
    m_inv: &DMatrix<f64>,
) -> (DVector<f64>, DVector<f64>) {
    let p_next = p - grad_v(q) * h;
    let q_next = q + m_inv * &p_next * h;
    (q_next, p_next)
}

/// Half kick, drift, half kick.
pub fn stormer_verlet_step(
    q: &DVector<f64>,
    p: &DVector<f64>,
    h: f64,
    grad_v: impl Fn(&DVector<f64>) -> DVector<f64>,
    m_inv: &DMatrix<f64>,
) -> (DVector<f64>, DVector<f64>) {
    let p_half = p - grad_v(q) * (0.5 * h);
    let q_next = q + m_inv * &p_half * h;
    let p_next = p_half - grad_v(&q_next) * (0.5 * h);
    (q_next, p_next)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    SymplecticEuler,
    StormerVerlet,
}

/// Runs `steps` steps of `scheme` and returns every `(q_k, p_k)`.
pub fn integrate_separable(
    scheme: Scheme,
    q0: DVector<f64>,
    p0: DVector<f64>,
    h: f64,
    steps: usize,
    grad_v: impl Fn(&DVector<f64>) -> DVector<f64>,
    m_inv: &DMatrix<f64>,
) -> Vec<(DVector<f64>, DVector<f64>)> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push((q0, p0));
    for _ in 0..steps {
        let (q, p) = out.last().unwrap();
        let next = match scheme {
            Scheme::SymplecticEuler => symplectic_euler_step(q, p, h, &grad_v, m_inv),
            Scheme::StormerVerlet => stormer_verlet_step(q, p, h, &grad_v, m_inv),
        };
        out.push(next);
    }
    out
}

/// Least-squares slope of `log(errors)` against `log(hs)`.
pub fn loglog_slope(hs: &[f64], errors: &[f64]) -> f64 {
    assert_eq!(hs.len(), errors.len());
    let n = hs.len() as f64;
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
