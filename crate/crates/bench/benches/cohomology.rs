use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use parcoh_core::cohomology::{cohomology, DEFAULT_BUDGET};
use parcoh_core::exel::build_exel;
use parcoh_core::fixtures;
use parcoh_core::monoid::CommMonoid;
use parcoh_core::partial_module::PartialGModule;
use parcoh_core::resolution::{cohomology_via_resolution, Resolution};

fn modules() -> Vec<(String, PartialGModule)> {
    vec![
        ("sign".into(), fixtures::sign_module()),
        ("semilattice-z3".into(), fixtures::exel_semilattice_module(&fixtures::z3())),
        ("z2xz2-over-z2xz2".into(), PartialGModule::trivial(fixtures::klein(), CommMonoid::direct_product(&CommMonoid::cyclic_group(2), &CommMonoid::cyclic_group(2)))),
    ]
}

fn routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("h2");
    for (name, m) in modules() {
        group.bench_with_input(BenchmarkId::new("direct", &name), &m, |b, m| b.iter(|| cohomology(m, 2, DEFAULT_BUDGET).unwrap()));
        group.bench_with_input(BenchmarkId::new("resolution", &name), &m, |b, m| b.iter(|| cohomology_via_resolution(m, 2, DEFAULT_BUDGET).unwrap()));
    }
    group.finish();
}

fn homotopy(c: &mut Criterion) {
    let m = fixtures::exel_semilattice_module(&fixtures::z3());
    let r = Resolution::new(&m, DEFAULT_BUDGET).unwrap();
    c.bench_function("homotopy-semilattice-z3-deg3", |b| b.iter(|| r.check_homotopy(3).unwrap()));
}

fn exel(c: &mut Criterion) {
    let mut group = c.benchmark_group("exel");
    for (name, g) in [("z3", fixtures::z3()), ("klein", fixtures::klein()), ("s3", fixtures::s3())] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| b.iter(|| build_exel(g).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, routes, homotopy, exel);
criterion_main!(benches);
