use alpha_farey::expansion::Alpha;
use alpha_farey::farey::induced_fj;
use alpha_farey::natext::{conjugacy_residual, sample_domain, CoordinateSystem};
use alpha_farey::{rng, Execution, ExactReal};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn clouds(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample_domain");
    g.sample_size(10);
    let n = 20_000;
    g.throughput(Throughput::Elements(n as u64));
    for alpha in [ExactReal::ratio(3, 10).unwrap(), ExactReal::sqrt2_minus_1()] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, &alpha), &alpha, |b, a| {
                b.iter(|| sample_domain(a, CoordinateSystem::VFlat, n, 7, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn induced_steps(c: &mut Criterion) {
    let alpha = Alpha::new(&ExactReal::ratio(2, 5).unwrap()).unwrap();
    let xs: Vec<ExactReal> =
        (0..2_000).map(|i| rng::rational_in(&mut rng::stream(11, i), &alpha.lower, &alpha.value, 64).unwrap()).collect();
    let mut g = c.benchmark_group("induced_fj");
    g.throughput(Throughput::Elements(xs.len() as u64));
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| exec.map(&xs, |x| induced_fj(&alpha, black_box(x), 1 << 20).unwrap())));
    }
    g.finish();
}

fn conjugacy(c: &mut Criterion) {
    let a = ExactReal::sqrt2_minus_1();
    let alpha = Alpha::new(&a).unwrap();
    let cloud = sample_domain(&a, CoordinateSystem::VOne, 4_000, 3, Execution::Sequential).unwrap();
    let mut g = c.benchmark_group("conjugacy_residual");
    g.sample_size(10);
    g.throughput(Throughput::Elements(cloud.points.len() as u64));
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| exec.map(&cloud.points, |p| conjugacy_residual(&alpha, p).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, clouds, induced_steps, conjugacy);
criterion_main!(benches);
