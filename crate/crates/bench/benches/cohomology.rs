use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hloc::cohomology::{h1_loc, Cohomology};
use hloc::scenarios::{stabilizer_family_group, stabilizer_grid, two_adic_counterexample, StabilizerParams};
use hloc::zmod::howell_form;
use hloc::{GModule, MatGroup, ResidueMatrix};

fn howell(c: &mut Criterion) {
    // 24 x 6 rows over Z/27 from a fixed linear recurrence
    let rows: Vec<Vec<u64>> = (0..24u64)
        .map(|i| (0..6u64).map(|j| (i * 7 + j * 13 + i * j * 5) % 27).collect())
        .collect();
    c.bench_function("howell 24x6 mod 27", |b| {
        b.iter(|| howell_form(black_box(&rows), 27, 6).unwrap())
    });
}

fn closure(c: &mut Criterion) {
    let gens = vec![
        ResidueMatrix::from_rows(16, &[[3i64, 8], [0, 1]]).unwrap(),
        ResidueMatrix::from_rows(16, &[[15i64, 0], [0, 1]]).unwrap(),
    ];
    c.bench_function("closure G_16", |b| {
        b.iter(|| MatGroup::generated_by(black_box(gens.clone())).unwrap())
    });

    let big = vec![
        ResidueMatrix::from_rows(9, &[[1i64, 1], [0, 1]]).unwrap(),
        ResidueMatrix::from_rows(9, &[[2i64, 0], [0, 1]]).unwrap(),
        ResidueMatrix::from_rows(9, &[[1i64, 0], [1, 1]]).unwrap(),
    ];
    c.bench_function("closure GL_2(Z/9)", |b| {
        b.iter(|| MatGroup::generated_by(black_box(big.clone())).unwrap())
    });
}

fn two_adic(c: &mut Criterion) {
    let dz = two_adic_counterexample().unwrap();
    c.bench_function("h1_loc (Z/8)^* on Z/8", |b| {
        b.iter(|| h1_loc(black_box(&dz.module)).unwrap())
    });
}

fn stabilizer_family(c: &mut Criterion) {
    let groups: Vec<Arc<GModule>> = stabilizer_grid(5, 2)
        .unwrap()
        .iter()
        .map(|p| Arc::new(GModule::natural(Arc::new(stabilizer_family_group(p).unwrap()))))
        .collect();
    c.bench_function("h1_loc stabilizer grid p=5 n=2", |b| {
        b.iter(|| groups.iter().all(|m| h1_loc(m).unwrap().is_trivial()))
    });

    let params = StabilizerParams::new(5, 2, 1, 0, 1).unwrap();
    let module = Arc::new(GModule::natural(Arc::new(stabilizer_family_group(&params).unwrap())));
    c.bench_function("cocycle space p=5 n=2 i=1 e=0 b=1", |b| {
        b.iter(|| Cohomology::new(black_box(module.clone())).unwrap())
    });
}

criterion_group!(benches, howell, closure, two_adic, stabilizer_family);
criterion_main!(benches);
