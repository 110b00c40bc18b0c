use criterion::{criterion_group, criterion_main, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sklyanin_core::ellfun::C64;
use sklyanin_core::leafdim::catalog::Example;
use sklyanin_core::leafdim::{leaf_dimension, singularity_divisors};
use sklyanin_core::parabolics::classification_table;
use sklyanin_core::rmatrix::{build_sl_rep, cdybe_residual, felder_r, sample_dynamical_point, sample_spectral_triple};
use sklyanin_core::toric2d::{hilbert_basis, sl2_cone};
use sklyanin_core::EllipticContext;
use std::hint::black_box;

fn tau() -> C64 {
    C64::new(0.3, 0.8)
}

fn parabolics(c: &mut Criterion) {
    c.bench_function("classification_table rank<=8", |b| b.iter(|| classification_table(black_box(8))));
}

fn leaves(c: &mut Criterion) {
    let sd = Example::Isotropic.build(6, 1, tau()).unwrap();
    c.bench_function("leaf_dimension isotropic n=6", |b| b.iter(|| leaf_dimension(black_box(&sd)).unwrap()));
    c.bench_function("singularity_divisors isotropic n=6", |b| {
        b.iter(|| singularity_divisors(black_box(&sd)).unwrap())
    });
}

fn elliptic(c: &mut Criterion) {
    let ctx = EllipticContext::new(tau()).unwrap();
    let z = C64::new(0.17, 0.23);
    let w = C64::new(-0.11, 0.05);
    c.bench_function("theta1", |b| b.iter(|| ctx.theta1(black_box(z)).unwrap()));
    c.bench_function("sigma", |b| b.iter(|| ctx.sigma(black_box(w), black_box(z)).unwrap()));
}

fn r_matrix(c: &mut Criterion) {
    let ctx = EllipticContext::new(tau()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for n in [2, 3] {
        let rep = build_sl_rep(n).unwrap();
        let lambda = sample_dynamical_point(&rep, &ctx, &mut rng).unwrap();
        let [z1, z2, z3] = sample_spectral_triple(&mut rng);
        c.bench_function(&format!("felder_r sl{n}"), |b| {
            b.iter(|| felder_r(&rep, &ctx, &lambda, black_box(z1 - z2)).unwrap())
        });
        c.bench_function(&format!("cdybe_residual sl{n}"), |b| {
            b.iter(|| cdybe_residual(&rep, &ctx, &lambda, z1, z2, black_box(z3)).unwrap())
        });
    }
}

fn toric(c: &mut Criterion) {
    let cone = sl2_cone(50).unwrap();
    c.bench_function("hilbert_basis k=50", |b| b.iter(|| hilbert_basis(black_box(&cone))));
}

criterion_group!(benches, parabolics, leaves, elliptic, r_matrix, toric);
criterion_main!(benches);
