//! Benchmarks for the hot kernels: cyclotomic arithmetic, integer normal
//! forms, torus and Ore multiplication, and representation construction.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsolv_core::intlat::{alternating_normal_form, smith_normal_form, IntMat};
use qsolv_core::orealg::{random_element, OreAlgebra, OreSpecData};
use qsolv_core::qrep::{build_torus_irrep, commutant_dimension, CentralCharacter};
use qsolv_core::qtorus::{TorusAlgebra, TorusElement};
use qsolv_core::scalar::{q_binomial, CycScalar, QLaurent};

fn random_skew(rng: &mut ChaCha8Rng, m: usize, bound: i64) -> IntMat {
    let mut s = IntMat::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let v = rng.gen_range(-bound..=bound);
            s[(i, j)] = v;
            s[(j, i)] = -v;
        }
    }
    s
}

fn bench_cyclotomic(c: &mut Criterion) {
    let mut group = c.benchmark_group("cyclotomic");
    for l in [5u32, 12] {
        let a = CycScalar::eps(l)
            .add(&CycScalar::from_i64(l, 3))
            .sub(&CycScalar::eps_pow(l, 2).scale(&qsolv_core::scalar::rat_frac(1, 2)));
        group.bench_with_input(BenchmarkId::new("inverse", l), &a, |b, a| {
            b.iter(|| a.inv());
        });
    }
    group.bench_function("q_binomial(8,4)", |b| {
        b.iter(|| q_binomial(5, 8, 4, 1));
    });
    group.finish();
}

fn bench_intlat(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("intlat");
    for m in [4usize, 8] {
        let s = random_skew(&mut rng, m, 3);
        group.bench_with_input(BenchmarkId::new("snf", m), &s, |b, s| {
            b.iter(|| smith_normal_form(s));
        });
        group.bench_with_input(BenchmarkId::new("alternating_form", m), &s, |b, s| {
            b.iter(|| alternating_normal_form(s));
        });
    }
    group.finish();
}

fn bench_multiplication(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    let torus = TorusAlgebra::new(5, random_skew(&mut ChaCha8Rng::seed_from_u64(2), 4, 3));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut rand_torus = || {
        let mut out = TorusElement::zero(&torus);
        for _ in 0..4 {
            let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
            out = out.add(&TorusElement::monomial(&torus, e, QLaurent::q(5)));
        }
        out
    };
    let (a, b) = (rand_torus(), rand_torus());
    group.bench_function("torus_4gen", |bch| bch.iter(|| a.mul(&b)));

    let weyl = OreAlgebra::instantiate(&OreSpecData::weyl(), 3).unwrap();
    let x = random_element(&weyl, 11, 4);
    let y = random_element(&weyl, 12, 4);
    group.bench_function("weyl_deg4", |bch| bch.iter(|| x.mul(&y)));
    group.finish();
}

fn bench_representations(c: &mut Criterion) {
    let mut group = c.benchmark_group("representations");
    group.sample_size(10);
    let s = IntMat::from_rows(vec![
        vec![0, 1, 1, 1],
        vec![-1, 0, 1, 1],
        vec![-1, -1, 0, 1],
        vec![-1, -1, -1, 0],
    ]);
    let torus = TorusAlgebra::new(5, s);
    let chi = CentralCharacter::all_ones(5, 4, 0);
    group.bench_function("build_irrep_dim25", |b| {
        b.iter(|| build_torus_irrep(&torus, &chi).unwrap());
    });
    let rep = build_torus_irrep(&torus, &chi).unwrap();
    group.bench_function("commutant_dim25", |b| {
        b.iter(|| commutant_dimension(&rep).unwrap());
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_cyclotomic,
    bench_intlat,
    bench_multiplication,
    bench_representations
);
criterion_main!(benches);
