use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sigma_bounds::{
    gram_apply, reference_sigma, refined_bound, sandwich_estimate, walk_upper_bound, Matrix, Mode, OracleConfig,
    SandwichConfig,
};
use sigma_bounds_bench::fixtures;
use std::hint::black_box;

fn ones_apply(a: &Matrix) {
    match a.mode() {
        Mode::Real => {
            black_box(gram_apply(a, &vec![1.0f64; a.nrows()]).unwrap());
        }
        Mode::Complex => {
            let x = vec![sigma_bounds::Scalar::new(1.0, 0.0); a.nrows()];
            black_box(gram_apply(a, &x).unwrap());
        }
    }
}

fn kernels(c: &mut Criterion) {
    let inputs = fixtures();

    let mut g = c.benchmark_group("gram_apply");
    for (name, a) in &inputs {
        g.bench_with_input(BenchmarkId::from_parameter(name), a, |b, a| b.iter(|| ones_apply(a)));
    }
    g.finish();

    let mut g = c.benchmark_group("bounds");
    for (name, a) in &inputs {
        g.bench_with_input(BenchmarkId::new("refined", name), a, |b, a| {
            b.iter(|| black_box(refined_bound(a).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("walk_upper_r4_p1", name), a, |b, a| {
            b.iter(|| black_box(walk_upper_bound(a, 4, 1).unwrap()))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("iterative");
    g.sample_size(10);
    for (name, a) in &inputs {
        g.bench_with_input(BenchmarkId::new("oracle", name), a, |b, a| {
            b.iter(|| black_box(reference_sigma(a, &OracleConfig::default())))
        });
        if a.mode() == Mode::Real && a.real_values().unwrap().iter().all(|x| *x >= 0.0) {
            let cfg = SandwichConfig { p: 1, rel_tol: 1e-6, r_max: 500 };
            g.bench_with_input(BenchmarkId::new("sandwich", name), a, |b, a| {
                b.iter(|| black_box(sandwich_estimate(a, &cfg)))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
