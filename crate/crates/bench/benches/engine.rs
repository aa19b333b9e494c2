use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use frobchi::{chi_series, EigenComponents, GroebnerBasis, Probe};
use frobchi_bench::{cyclic_ideal, koszul, ring, synthetic_series};

fn groebner(c: &mut Criterion) {
    let mut group = c.benchmark_group("groebner");
    for n in [4, 5] {
        let (module, gens) = cyclic_ideal(32003, n);
        group.bench_with_input(BenchmarkId::new("cyclic", n), &n, |b, _| {
            b.iter(|| GroebnerBasis::compute(&module, black_box(&gens)).unwrap())
        });
    }
    group.finish();
}

fn frobenius_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("chi_series");
    group.sample_size(10);
    let r = ring(2, &["x", "y", "z"], &[]);
    let k = koszul(&r, &["x", "y", "z"]);
    let y = Probe::ring(&r).unwrap();
    group.bench_function("koszul_xyz_p2_e3", |b| b.iter(|| chi_series(&k, &y, 3).unwrap()));

    let s = ring(3, &["x", "y", "z", "w"], &["x*w - y*z"]);
    let k = koszul(&s, &["x", "w", "y + z"]);
    let y = Probe::ring(&s).unwrap();
    group.bench_function("quadric_p3_e2", |b| b.iter(|| chi_series(&k, &y, 2).unwrap()));
    group.finish();
}

fn vandermonde(c: &mut Criterion) {
    let mut group = c.benchmark_group("vandermonde");
    for u in [2usize, 4, 8] {
        let a: Vec<i64> = (0..=u as i64).map(|i| 3 - 2 * i).collect();
        let values = synthetic_series(5, u as i64 + 2, &a, u);
        group.bench_with_input(BenchmarkId::new("solve", u), &u, |b, &u| {
            b.iter(|| EigenComponents::solve(5, u as i64 + 2, black_box(&values), u).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, groebner, frobenius_series, vandermonde);
criterion_main!(benches);
