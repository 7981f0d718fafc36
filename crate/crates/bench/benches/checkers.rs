use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nambu_forge::algebroid::comorphism_duality_pair;
use nambu_forge::builtins::{tangent, v4};
use nambu_forge::nambu::{check_nambu_fi_default, NambuTensor};
use nambu_forge::nlie::check_fundamental_identity;
use nambu_forge::rinehart::check_rinehart;
use nambu_forge::Config;
use nambu_forge_bench::{comorphism_batch, dual_tensors};

fn nlie(c: &mut Criterion) {
    let l = v4();
    c.bench_function("fundamental_identity/v4", |b| b.iter(|| check_fundamental_identity(&l)));
}

fn rinehart(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_rinehart");
    for n in [2, 3] {
        let t = tangent(n);
        g.bench_with_input(BenchmarkId::new("tangent", n), &t, |b, t| b.iter(|| check_rinehart(t)));
    }
    g.finish();
}

fn nambu(c: &mut Criterion) {
    let cfg = Config::builtin();
    let mut g = c.benchmark_group("nambu_fi");
    for m in [3, 4] {
        let pi = NambuTensor::top(m);
        g.bench_with_input(BenchmarkId::new("canonical", m), &pi, |b, pi| {
            b.iter(|| check_nambu_fi_default(pi, &cfg).unwrap())
        });
    }
    let duals = dual_tensors(2);
    g.bench_function("duals/n2", |b| {
        b.iter(|| duals.iter().map(|pi| check_nambu_fi_default(pi, &cfg).unwrap()).count())
    });
    g.finish();
}

fn duality(c: &mut Criterion) {
    let mut g = c.benchmark_group("comorphism_duality");
    g.sample_size(10);
    for n in [2, 3] {
        let batch = comorphism_batch(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &batch, |b, batch| {
            b.iter(|| {
                batch
                    .iter()
                    .map(|(phi, a2, a1)| comorphism_duality_pair(phi, a2, a1).unwrap())
                    .count()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, nlie, rinehart, nambu, duality);
criterion_main!(benches);
