use criterion::{criterion_group, criterion_main, Criterion};
use quintic_bench::{Q_ORDER, Z_ORDER};
use quintic_core::graphs::{enumerate_bipartite, enumerate_tripartite, Leaves, PsiTable};
use quintic_core::mirrordata::build_idata;
use quintic_core::qde::r_matrix;
use std::hint::black_box;

fn series(c: &mut Criterion) {
    c.bench_function("build_idata", |b| b.iter(|| build_idata(black_box(Q_ORDER))));
    let data = build_idata(Q_ORDER);
    c.bench_function("qseries_mul", |b| b.iter(|| black_box(&data.i0).mul_ref(black_box(&data.i11))));
}

fn rmatrix(c: &mut Criterion) {
    c.bench_function("r_matrix", |b| b.iter(|| r_matrix(black_box(Z_ORDER)).expect("recursion")));
}

fn psi(c: &mut Criterion) {
    c.bench_function("psi_genus3", |b| {
        b.iter(|| {
            let t = PsiTable::new();
            t.integral(black_box(3), &[3, 3, 2, 2, 1])
        })
    });
}

fn graphs(c: &mut Criterion) {
    let mut g = c.benchmark_group("graphs");
    g.sample_size(10);
    g.bench_function("bipartite_g2", |b| b.iter(|| enumerate_bipartite(black_box(2), 0, &[], Leaves::StableQuotient)));
    g.bench_function("tripartite_g2", |b| b.iter(|| enumerate_tripartite(black_box(2), 0)));
    g.finish();
}

criterion_group!(benches, series, rmatrix, psi, graphs);
criterion_main!(benches);
