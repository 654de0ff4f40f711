use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lie_dmoc::dynamics::{dlga_simulate, RigidBodyState, SineTorque};
use lie_dmoc::liealg::{exp_so3, log_so3, Rotation};
use lie_dmoc::presets;
use lie_dmoc_cli::output::{read_trajectory, write_trajectory, TRAJECTORY_HEADER};
use nalgebra::{Matrix3, Vector3};
use tempfile::TempDir;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn lie_dmoc(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lie-dmoc"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("LIE_DMOC_THREADS")
        .output()
        .expect("binary runs")
}

fn solve_config(name: &str, out: &Path) -> Output {
    let cfg = configs().join(format!("{name}.json"));
    lie_dmoc(&["solve", "--config", cfg.to_str().unwrap()], out)
}

fn summary(out: &Path, stem: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(out.join(format!("{stem}_summary.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("case.json");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn identity_maneuver_summary() {
    let out = TempDir::new().unwrap();
    let o = solve_config("identity", out.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(out.path(), "identity");
    assert_eq!(s["cost"].as_f64(), Some(0.0));
    assert!(s["iterations"].as_u64().unwrap() <= 1);
}

#[test]
fn rest_to_rest_writes_converged_trajectory() {
    let out = TempDir::new().unwrap();
    let o = solve_config("rest_to_rest", out.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(out.path(), "rest_to_rest");
    assert!(s["residual_norm"].as_f64().unwrap() <= 1e-9);
    assert!(s["multiplier_residual"].as_f64().unwrap() < 1e-6);

    let csv = std::fs::read_to_string(out.path().join("rest_to_rest.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "k,t,R11,R12,R13,R21,R22,R23,R31,R32,R33,wx,wy,wz,tx,ty,tz"
    );
    assert_eq!(lines.len(), 1 + 129);
    let last: Vec<&str> = lines[129].split(',').collect();
    assert_eq!(last.len(), 17);
    assert_eq!(&last[11..14], ["", "", ""]);
    assert!(lines[1..129]
        .iter()
        .all(|l| l.split(',').all(|f| !f.is_empty())));

    let traj = read_trajectory(&out.path().join("rest_to_rest.csv")).unwrap();
    let target = exp_so3(&Vector3::new(std::f64::consts::FRAC_PI_3, 0.0, 0.0));
    let end = log_so3(&traj.attitudes[128].tr_mul(&target)).unwrap();
    assert!(end.norm() < 1e-8);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    for dir in [&a, &b] {
        assert!(solve_config("slew_up", dir.path()).status.success());
    }
    for file in ["slew_up.csv", "slew_up_summary.json"] {
        let x = std::fs::read(a.path().join(file)).unwrap();
        let y = std::fs::read(b.path().join(file)).unwrap();
        assert!(x == y, "{file} differs between runs");
    }
}

#[test]
fn trajectory_round_trips_bit_exactly() {
    let init = RigidBodyState::new(
        exp_so3(&Vector3::new(0.3, -1.2, 2.0)),
        Vector3::new(0.7, -0.1, 0.3),
    );
    let torque = SineTorque {
        amplitude: 1.0 / 3.0,
        frequency: 0.9,
        axis: Vector3::new(0.2, 0.5, -1.0),
    };
    let traj = dlga_simulate(&init, &torque, &presets::reference_inertia(), 0.07, 50).unwrap();
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("t.csv");
    write_trajectory(&path, &traj).unwrap();
    assert_eq!(read_trajectory(&path).unwrap(), traj);
}

#[test]
fn simulate_writes_every_step() {
    let out = TempDir::new().unwrap();
    let cfg = configs().join("tumble.json");
    let o = lie_dmoc(&["simulate", "--config", cfg.to_str().unwrap()], out.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let traj = read_trajectory(&out.path().join("tumble.csv")).unwrap();
    assert_eq!(traj.attitudes.len(), 401);
    assert_eq!(traj.omegas.len(), 400);
    assert!(traj.max_orthogonality_error() < 1e-12);
    assert!(traj.momentum_residual(&presets::reference_inertia()) < 1e-10);
}

#[test]
fn convergence_table_decreases() {
    let out = TempDir::new().unwrap();
    let cfg = configs().join("so2_convergence.json");
    let o = lie_dmoc(
        &["convergence", "--config", cfg.to_str().unwrap()],
        out.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(out.path().join("so2_convergence.csv")).unwrap();
    assert_eq!(
        r.headers().unwrap(),
        vec!["steps", "h", "max_theta_error", "max_omega_error"]
    );
    let rows: Vec<(usize, f64, f64)> = r
        .records()
        .map(|rec| {
            let rec = rec.unwrap();
            (
                rec[0].parse().unwrap(),
                rec[2].parse().unwrap(),
                rec[3].parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        rows.iter().map(|r| r.0).collect::<Vec<_>>(),
        [1000, 1500, 2000]
    );
    for w in rows.windows(2) {
        assert!(w[1].1 < w[0].1 && w[1].2 < w[0].2);
    }
}

#[test]
fn config_errors_exit_two_with_location() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "{\n  \"mode\": \"solve\",\n  \"stepz\": 4\n}\n");
    let o = lie_dmoc(&["solve", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("stepz") && err.contains("line 3"), "{err}");

    let bad_rotation = r#"{"inertia": [[2,0,0],[0,3,0],[0,0,4]], "steps": 8, "h": 0.1,
        "initial": {"attitude": {"matrix": [1,0,0, 0,1,0, 0,0,1.0000001]}},
        "final": {"attitude": {"axis_angle": [0,0,0]}}}"#;
    let cfg = write_config(dir.path(), bad_rotation);
    let o = lie_dmoc(&["solve", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("initial.attitude"));

    let o = lie_dmoc(&["verify", "--filter", "no_such_check"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_three() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(configs().join("slew_up.json")).unwrap();
    let text = text.replacen('{', "{\n  \"solver\": {\"max_iter\": 1},", 1);
    let cfg = write_config(dir.path(), &text);
    let o = lie_dmoc(&["solve", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("best residual"));
}

#[test]
fn thread_variable_is_validated() {
    let dir = TempDir::new().unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_lie-dmoc"))
            .args(["verify", "--filter", "hat_vee", "--out"])
            .arg(dir.path())
            .env("LIE_DMOC_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(run("2").status.code(), Some(0));
    assert_eq!(run("0").status.code(), Some(2));
    assert_eq!(run("many").status.code(), Some(2));
}

#[test]
fn verify_emits_log_vectors() {
    let out = TempDir::new().unwrap();
    let o = lie_dmoc(&["verify", "--filter", "log"], out.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("PASS  log_exp"), "{stdout}");

    let mut r = csv::Reader::from_path(out.path().join("log_so3_vectors.csv")).unwrap();
    let mut count = 0;
    for rec in r.records() {
        let vals: Vec<f64> = rec.unwrap().iter().map(|f| f.parse().unwrap()).collect();
        let m = Rotation::from_matrix(Matrix3::from_row_slice(&vals[..9]), 1e-12).unwrap();
        let v = Vector3::new(vals[9], vals[10], vals[11]);
        assert!((log_so3(&m).unwrap() - v).amax() < 1e-9);
        assert!((exp_so3(&v).matrix() - m.matrix()).amax() < 1e-9);
        count += 1;
    }
    assert!(count > 50);
    assert_eq!(TRAJECTORY_HEADER.len(), 17);
}
