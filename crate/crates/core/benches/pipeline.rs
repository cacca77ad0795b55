use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use syzkit::enumerative::enumerate_admissible;
use syzkit::mirror::verify_identity;
use syzkit::mirror::KahlerPoint;
use syzkit::periods::{hk_period_check, QuadratureParams};

/// Thread counts to compare: one worker against the full pool.
fn pools() -> Vec<(String, Option<usize>)> {
    let mut out = vec![("sequential".to_string(), Some(1))];
    if syzkit::par::is_parallel() {
        out.push(("parallel".to_string(), None));
    }
    out
}

#[cfg(feature = "parallel")]
fn run_in<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool").install(f)
}

#[cfg(not(feature = "parallel"))]
fn run_in<R: Send>(_threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    f()
}

fn identity(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_identity");
    for (name, threads) in pools() {
        group.bench_with_input(BenchmarkId::new(name, 8), &8usize, |b, &m| {
            b.iter(|| run_in(threads, || verify_identity(black_box(m)).unwrap()))
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_admissible");
    for (name, threads) in pools() {
        group.bench_with_input(BenchmarkId::new(name, 12), &12usize, |b, &m| {
            b.iter(|| {
                run_in(threads, || {
                    (1..=m)
                        .map(|l| enumerate_admissible(m, l).unwrap().len())
                        .sum::<usize>()
                })
            })
        });
    }
    group.finish();
}

fn quadrature(c: &mut Criterion) {
    let q = KahlerPoint::real(&[0.3, 0.6, 0.45, 0.8]).unwrap();
    let params = QuadratureParams {
        n_t: 32,
        n_theta: 64,
        tolerance: 1e-6,
    };
    let mut group = c.benchmark_group("hk_period_check");
    for (name, threads) in pools() {
        group.bench_function(BenchmarkId::new(name, 5), |b| {
            b.iter(|| run_in(threads, || hk_period_check(black_box(&q), params).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, identity, enumeration, quadrature);
criterion_main!(benches);
