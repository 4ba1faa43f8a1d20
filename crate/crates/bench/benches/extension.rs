use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use crsing::extend::{build_xd, cr_homogeneous_basis, extend_homogeneous};
use crsing::formal::formal_extend;
use crsing::{parse_poly, GaussRational, Manifold, Matrix, Quadric};

fn family() -> Quadric {
    let g = |re: i64, im: i64| GaussRational::from_frac(re, 1, im, 1);
    Quadric::hermitian(Matrix::from_rows(vec![vec![g(1, 0), g(2, 1)], vec![g(0, 0), g(3, -1)]])).unwrap()
}

fn rank_of_xd(c: &mut Criterion) {
    let q = family();
    let mut group = c.benchmark_group("rank_xd");
    for d in [4u32, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| build_xd(black_box(&q), d).rank())
        });
    }
    group.finish();
}

fn homogeneous_extension(c: &mut Criterion) {
    let q = family();
    let basis = cr_homogeneous_basis(&q, 6).basis;
    c.bench_function("extend_homogeneous_d6", |b| {
        b.iter(|| {
            for f in &basis {
                black_box(extend_homogeneous(&q, f).unwrap());
            }
        })
    });
}

fn formal_extension(c: &mut Criterion) {
    let a = Matrix::from_rows(vec![vec![0.into(), 1.into()], vec![0.into(), 0.into()]]);
    let m = Manifold::new(Quadric::hermitian(a).unwrap(), parse_poly("zb2^3", 2).unwrap()).unwrap();
    let f = parse_poly("z1*w + w^3 + z2^2*w", 2).unwrap().substitute_w(m.rho()).unwrap();
    c.bench_function("formal_extend_order8", |b| b.iter(|| formal_extend(&m, black_box(&f), 8).unwrap()));
}

criterion_group!(benches, rank_of_xd, homogeneous_extension, formal_extension);
criterion_main!(benches);
