//! Benchmarks for the hot kernels: row reduction, the radical chain, and a
//! full pointed-fusion-system build.

use criterion::{criterion_group, criterion_main, Criterion};
use pfs_bench::{a4_group_algebra, gf4, random_matrix};
use pfs_core::groups::catalog::catalog;
use pfs_core::pfs::BlockSession;
use std::hint::black_box;

fn bench_rref(c: &mut Criterion) {
    let m = random_matrix(gf4(), 60, 0xFEED);
    c.bench_function("rref 60x60 GF(4)", |b| {
        b.iter(|| black_box(&m).rref())
    });
}

fn bench_charpoly(c: &mut Criterion) {
    let m = random_matrix(gf4(), 44, 0xBEEF);
    c.bench_function("charpoly 44x44 GF(4)", |b| {
        b.iter(|| black_box(&m).charpoly())
    });
}

fn bench_radical(c: &mut Criterion) {
    c.bench_function("radical GF(4)[A4]", |b| {
        b.iter(|| {
            // fresh algebra each round: the radical is cached per instance
            let fga = a4_group_algebra();
            black_box(fga.algebra().radical().rows())
        })
    });
}

fn bench_build_pfs(c: &mut Criterion) {
    let group = catalog("A4").unwrap();
    c.bench_function("build_pfs A4 principal", |b| {
        b.iter(|| {
            let session = BlockSession::new(group.clone(), 2, 0, None).unwrap();
            black_box(session.build(1).unwrap().objects.len())
        })
    });
}

criterion_group!(benches, bench_rref, bench_charpoly, bench_radical, bench_build_pfs);
criterion_main!(benches);
