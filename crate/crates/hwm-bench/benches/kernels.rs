//! Benchmarks for the expensive kernels: root multiplicities, weight-set
//! enumeration, character tables, and exact LP membership.

use criterion::{criterion_group, criterion_main, Criterion};

use hwm_core::cartan::{positive_roots, Gcm};
use hwm_core::characters::freudenthal_levi_character;
use hwm_core::hull::{hull_contains, ray_decomposition};
use hwm_core::rational::{q, Q};
use hwm_core::weights::{weyl_kac_weight_series, wt_parabolic_verma, ModuleSpec};

fn gcm(rows: &[&[i64]]) -> Gcm {
    Gcm::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn ones(n: usize) -> Vec<Q> {
    vec![q(1); n]
}

fn peterson_multiplicities(c: &mut Criterion) {
    let affine = gcm(&[&[2, -2], &[-2, 2]]);
    let hyperbolic = gcm(&[&[2, -3], &[-3, 2]]);
    c.bench_function("peterson affine A1 height 24", |b| {
        b.iter(|| positive_roots(&affine, 24).unwrap())
    });
    c.bench_function("peterson hyperbolic height 16", |b| {
        b.iter(|| positive_roots(&hyperbolic, 16).unwrap())
    });
}

fn slice_weight_sets(c: &mut Criterion) {
    let b2 = gcm(&[&[2, -2], &[-1, 2]]);
    let spec = ModuleSpec::new(&b2, ones(2), &[0]).unwrap();
    c.bench_function("slice weights B2 cutoff 16", |b| {
        b.iter(|| wt_parabolic_verma(&b2, &spec, 16).unwrap())
    });
}

fn freudenthal_tables(c: &mut Criterion) {
    let g2 = gcm(&[&[2, -1], &[-3, 2]]);
    c.bench_function("freudenthal G2 cutoff 12", |b| {
        b.iter(|| freudenthal_levi_character(&g2, &ones(2), &[0, 1], 12).unwrap())
    });
}

fn hull_membership(c: &mut Criterion) {
    let a2 = gcm(&[&[2, -1], &[-1, 2]]);
    let spec = ModuleSpec::new(&a2, ones(2), &[0]).unwrap();
    let hull = ray_decomposition(&a2, &spec, 0).unwrap();
    c.bench_function("hull membership A2 10x10 grid", |b| {
        b.iter(|| {
            let mut inside = 0usize;
            for x in 0..10 {
                for y in 0..10 {
                    if hull_contains(&hull, &[x, y]).unwrap() {
                        inside += 1;
                    }
                }
            }
            inside
        })
    });
}

fn weyl_kac_series(c: &mut Criterion) {
    let g2 = gcm(&[&[2, -1], &[-3, 2]]);
    c.bench_function("weyl-kac series G2 cutoff 12", |b| {
        b.iter(|| weyl_kac_weight_series(&g2, &ones(2), 12).unwrap())
    });
}

criterion_group!(
    kernels,
    peterson_multiplicities,
    slice_weight_sets,
    freudenthal_tables,
    hull_membership,
    weyl_kac_series
);
criterion_main!(kernels);
