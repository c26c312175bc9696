//! Sequential versus data-parallel throughput of the three heavy sweeps:
//! curve relation verification, descent round-trips, and the exhaustive
//! lattice cross-validation.
//!
//! Run with `cargo bench -p birquartic`; build with
//! `--no-default-features` to confirm the sequential fallback compiles and
//! benches on its own.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use birquartic::elliptic::field::PrimeField;
use birquartic::elliptic::relations::shape_relation_suite;
use birquartic::exec::ExecMode;
use birquartic::lattice::enumerate::connected_graphs_up_to;
use birquartic::sweeps::{descent_roundtrip_sweep, lattice_cross_validate};

fn modes() -> Vec<(&'static str, ExecMode)> {
    let mut out = vec![("sequential", ExecMode::Sequential)];
    #[cfg(feature = "parallel")]
    out.push(("parallel", ExecMode::Parallel));
    out
}

fn bench_relation_sweep(c: &mut Criterion) {
    let ctx = PrimeField::default_large();
    let mut group = c.benchmark_group("relation-sweep");
    group
        .sample_size(10)
        .warm_up_time(Duration::from_millis(500));
    for (name, mode) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| {
                for shape in 1..=3usize {
                    let checks =
                        shape_relation_suite(&ctx, shape, "bench", black_box(2_000), 7, mode);
                    assert!(checks.iter().all(|r| r.failures == 0));
                }
            })
        });
    }
    group.finish();
}

fn bench_descent_roundtrip(c: &mut Criterion) {
    let mut group = c.benchmark_group("descent-roundtrip");
    group
        .sample_size(10)
        .warm_up_time(Duration::from_millis(500));
    for (name, mode) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| {
                let sweep = descent_roundtrip_sweep(mode, black_box(300), 12, 100, 0xbe);
                assert!(sweep.all_passed());
            })
        });
    }
    group.finish();
}

fn bench_lattice_cross_validation(c: &mut Criterion) {
    // Enumeration is inherently sequential; bench the verification pass on
    // a pre-enumerated batch.
    let graphs = connected_graphs_up_to(8);
    let mut group = c.benchmark_group("lattice-cross-validation");
    group
        .sample_size(10)
        .warm_up_time(Duration::from_millis(500));
    for (name, mode) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| {
                let sweep = lattice_cross_validate(mode, black_box(graphs.clone()));
                assert!(sweep.all_passed());
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_relation_sweep,
    bench_descent_roundtrip,
    bench_lattice_cross_validation
);
criterion_main!(benches);
