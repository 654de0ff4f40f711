use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::{JacobianMethod, ResidualFunction};

/// Below this many columns the Jacobian is assembled on the calling thread.
const PARALLEL_MIN_COLUMNS: usize = 32;

fn columns<E, C>(n: usize, column: C) -> Result<Vec<Vec<f64>>, E>
where
    E: Send,
    C: Fn(usize) -> Result<Vec<f64>, E> + Sync + Send,
{
    if n < PARALLEL_MIN_COLUMNS {
        (0..n).map(column).collect()
    } else {
        (0..n).into_par_iter().map(column).collect()
    }
}

/// Dense Jacobian by complex step: column `k` is `Im[F(x + iεe_k)]/ε`.
///
/// Columns of larger systems are evaluated in parallel on the current rayon
/// pool; each column is computed independently, so the result does not
/// depend on scheduling.
pub fn jacobian_complex_step<F: ResidualFunction>(
    f: &F,
    x: &[f64],
    eps: f64,
) -> Result<DMatrix<f64>, F::Error> {
    let n = x.len();
    let base: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let cols = columns(n, |k| {
        let mut xp = base.clone();
        xp[k].im = eps;
        let fx = f.eval(&xp)?;
        Ok(fx.iter().map(|c| c.im / eps).collect())
    })?;
    Ok(assemble(cols, n))
}

/// Dense Jacobian by central differences with step `1e-7·(1 + |x_k|)`.
pub fn jacobian_fd<F: ResidualFunction>(f: &F, x: &[f64]) -> Result<DMatrix<f64>, F::Error> {
    let n = x.len();
    let cols = columns(n, |k| {
        let step = 1e-7 * (1.0 + x[k].abs());
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[k] += step;
        xm[k] -= step;
        // Use the realized step so the rounding of x ± step cancels.
        let width = xp[k] - xm[k];
        let fp = f.eval(&xp)?;
        let fm = f.eval(&xm)?;
        Ok(fp.iter().zip(&fm).map(|(a, b)| (a - b) / width).collect())
    })?;
    Ok(assemble(cols, n))
}

/// Dispatches on `method`.
pub fn jacobian<F: ResidualFunction>(
    f: &F,
    x: &[f64],
    method: JacobianMethod,
    eps: f64,
) -> Result<DMatrix<f64>, F::Error> {
    match method {
        JacobianMethod::ComplexStep => jacobian_complex_step(f, x, eps),
        JacobianMethod::CentralDifference => jacobian_fd(f, x),
    }
}

fn assemble(columns: Vec<Vec<f64>>, n: usize) -> DMatrix<f64> {
    let rows = columns.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows, n, |i, k| columns[k][i])
}
