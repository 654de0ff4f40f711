//! CSV and JSON artifacts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use lie_dmoc::dynamics::{DiscreteTrajectory, PlanarErrorRow};
use lie_dmoc::liealg::{log_so3, Rotation};
use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::CliError;

pub const TRAJECTORY_HEADER: [&str; 17] = [
    "k", "t", "R11", "R12", "R13", "R21", "R22", "R23", "R31", "R32", "R33", "wx", "wy", "wz",
    "tx", "ty", "tz",
];

pub const CONVERGENCE_HEADER: [&str; 4] = ["steps", "h", "max_theta_error", "max_omega_error"];

pub const LOG_VECTOR_HEADER: [&str; 12] = [
    "R11", "R12", "R13", "R21", "R22", "R23", "R31", "R32", "R33", "v1", "v2", "v3",
];

/// 17 significant digits; parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>, CliError> {
    csv::Writer::from_path(path).map_err(|e| io_err(path, e))
}

pub fn write_trajectory(path: &Path, traj: &DiscreteTrajectory) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    w.write_record(TRAJECTORY_HEADER)
        .map_err(|e| io_err(path, e))?;
    for (k, r) in traj.attitudes.iter().enumerate() {
        let mut row = Vec::with_capacity(17);
        row.push(k.to_string());
        row.push(fmt_f64(k as f64 * traj.h));
        let m = r.matrix();
        for i in 0..3 {
            for j in 0..3 {
                row.push(fmt_f64(m[(i, j)]));
            }
        }
        match traj.omegas.get(k) {
            Some(w) => row.extend(w.iter().map(|v| fmt_f64(*v))),
            None => row.extend(["", "", ""].map(String::from)),
        }
        let tau = traj.torques.get(k).copied().unwrap_or_else(Vector3::zeros);
        row.extend(tau.iter().map(|v| fmt_f64(*v)));
        w.write_record(&row).map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

/// Reads a trajectory CSV back; `h` is taken from the second row.
pub fn read_trajectory(path: &Path) -> Result<DiscreteTrajectory, CliError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| io_err(path, e))?;
    let header = r.headers().map_err(|e| io_err(path, e))?.clone();
    if header.iter().ne(TRAJECTORY_HEADER) {
        return Err(io_err(path, "header does not match the trajectory schema"));
    }
    let mut times = Vec::new();
    let mut attitudes = Vec::new();
    let mut omegas = Vec::new();
    let mut torques = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| io_err(path, e))?;
        let num = |i: usize| -> Result<f64, CliError> {
            rec[i].parse().map_err(|e| {
                io_err(
                    path,
                    format!("row {}, column {}: {e}", line + 1, TRAJECTORY_HEADER[i]),
                )
            })
        };
        times.push(num(1)?);
        let mut m = [0.0; 9];
        for (i, v) in m.iter_mut().enumerate() {
            *v = num(2 + i)?;
        }
        attitudes.push(Rotation::from_matrix_unchecked(Matrix3::from_row_slice(&m)));
        if !rec[11].is_empty() {
            omegas.push(Vector3::new(num(11)?, num(12)?, num(13)?));
        }
        torques.push(Vector3::new(num(14)?, num(15)?, num(16)?));
    }
    let h = times.get(1).copied().unwrap_or(0.0);
    Ok(DiscreteTrajectory {
        h,
        attitudes,
        omegas,
        torques,
    })
}

pub fn write_convergence(path: &Path, rows: &[PlanarErrorRow]) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    w.write_record(CONVERGENCE_HEADER)
        .map_err(|e| io_err(path, e))?;
    for row in rows {
        w.write_record([
            row.steps.to_string(),
            fmt_f64(row.h),
            fmt_f64(row.max_theta_error),
            fmt_f64(row.max_omega_error),
        ])
        .map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

/// Writes `R` and `log_so3(R)` for each rotation, for cross-checking other
/// implementations of the logarithm.
pub fn write_log_vectors(path: &Path, rotations: &[Rotation]) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    w.write_record(LOG_VECTOR_HEADER)
        .map_err(|e| io_err(path, e))?;
    for r in rotations {
        let v = log_so3(r).map_err(|e| io_err(path, e))?;
        let m = r.matrix();
        let row: Vec<String> = (0..9)
            .map(|i| m[(i / 3, i % 3)])
            .chain(v.iter().copied())
            .map(fmt_f64)
            .collect();
        w.write_record(&row).map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveSummary {
    pub steps: usize,
    pub h: f64,
    pub cost: f64,
    pub residual_norm: f64,
    pub iterations: usize,
    pub continuation_stages: usize,
    pub endpoint_error: f64,
    pub multiplier_residual: f64,
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| io_err(path, e))?;
    writeln!(out).map_err(|e| io_err(path, e))?;
    out.flush().map_err(|e| io_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 5e-324, f64::MAX, -0.0, 12.8] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
    }
}
