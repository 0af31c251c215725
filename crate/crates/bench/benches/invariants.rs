use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use matlor::charpoly::characteristic_polynomial;
use matlor::cone::sample_ample;
use matlor::matroid::uniform;
use matlor::symmat::{signature, signature_ldlt};
use matlor::volume::{mixed_degree_all, volume_polynomial};

fn bench_volume_polynomial(c: &mut Criterion) {
    let m = uniform(5, 5).unwrap();
    c.bench_function("volume_polynomial U(5,5)", |b| {
        b.iter(|| volume_polynomial(&m).unwrap())
    });
}

fn bench_characteristic_polynomial(c: &mut Criterion) {
    let m = uniform(6, 6).unwrap();
    c.bench_function("characteristic_polynomial U(6,6)", |b| {
        b.iter(|| characteristic_polynomial(&m).unwrap())
    });
}

fn bench_mixed_degrees(c: &mut Criterion) {
    let m = uniform(4, 5).unwrap();
    c.bench_function("mixed_degree_all U(4,5)", |b| {
        b.iter(|| mixed_degree_all(&m).unwrap())
    });
}

fn bench_signature_routes(c: &mut Criterion) {
    let m = uniform(4, 5).unwrap();
    let v = volume_polynomial(&m).unwrap();
    let u = sample_ample(&m, 7).unwrap();
    let g = v.directional_derivative(u.class().coords()).unwrap();
    let h = g.hessian_at(u.class().coords()).unwrap();

    let mut group = c.benchmark_group("signature of an ample Hessian of U(4,5)");
    group.bench_function("root counting", |b| {
        b.iter_batched(|| h.clone(), |h| signature(&h), BatchSize::SmallInput)
    });
    group.bench_function("pivoted factorization", |b| {
        b.iter_batched(|| h.clone(), |h| signature_ldlt(&h), BatchSize::SmallInput)
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_volume_polynomial,
    bench_characteristic_polynomial,
    bench_mixed_degrees,
    bench_signature_routes,
);
criterion_main!(benches);
