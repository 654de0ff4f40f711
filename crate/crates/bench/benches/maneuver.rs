use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lie_dmoc::nlsolve::{jacobian, JacobianMethod, ResidualFunction};
use lie_dmoc::optctrl::{solve, ManeuverResidual};
use lie_dmoc::SolverOptions;
use lie_dmoc_bench::{rest_to_rest, start_point};

fn residual(c: &mut Criterion) {
    let mut group = c.benchmark_group("residual");
    for n in [16, 64, 128] {
        let spec = rest_to_rest(n);
        let x = start_point(&spec);
        let f = ManeuverResidual { spec: &spec };
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
            b.iter(|| f.eval::<f64>(black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn jacobians(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobian");
    group.sample_size(20);
    for n in [16, 64, 128] {
        let spec = rest_to_rest(n);
        let x = start_point(&spec);
        let f = ManeuverResidual { spec: &spec };
        for (name, method) in [
            ("complex_step", JacobianMethod::ComplexStep),
            ("central_difference", JacobianMethod::CentralDifference),
        ] {
            let eps = SolverOptions::default().step_eps;
            group.bench_with_input(BenchmarkId::new(name, n), &x, |b, x| {
                b.iter(|| jacobian(&f, black_box(x), method, eps).unwrap())
            });
        }
    }
    group.finish();
}

fn solves(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for n in [32, 64, 128] {
        let spec = rest_to_rest(n);
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| solve(black_box(&spec), &SolverOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, residual, jacobians, solves);
criterion_main!(benches);
