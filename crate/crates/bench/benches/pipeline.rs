use bochner::measures::{cauchy_residual, ks_distance, root_measure};
use bochner::{find_roots, ArcsineLaw, ProbeSettings};
use bochner_bench::{hermite, krall, legendre};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rug::{Complex, Float};

fn eigenpolynomials(c: &mut Criterion) {
    let mut g = c.benchmark_group("eigenpolynomial");
    for (name, op) in [("legendre", legendre()), ("krall", krall())] {
        for n in [50usize, 200] {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| op.eigenpolynomial(black_box(n)).unwrap())
            });
        }
    }
    g.finish();
}

fn roots(c: &mut Criterion) {
    let mut g = c.benchmark_group("find_roots");
    g.sample_size(10);
    for (name, op) in [("legendre", legendre()), ("hermite", hermite())] {
        for n in [25usize, 50] {
            let p = op.eigenpolynomial(n).unwrap();
            g.bench_with_input(BenchmarkId::new(name, n), &p, |b, p| {
                b.iter(|| find_roots(p, 30).unwrap())
            });
        }
    }
    g.finish();
}

fn diagnostics(c: &mut Criterion) {
    let op = legendre();
    let p = op.eigenpolynomial(100).unwrap();
    let rs = find_roots(&p, 30)
        .unwrap()
        .realness(&Float::with_val(64, 1));
    let m = root_measure(&rs).unwrap();
    let law = ArcsineLaw::standard();
    c.bench_function("ks_distance/100", |b| {
        b.iter(|| ks_distance(&m, &law).unwrap())
    });
    let x = Complex::with_val(128, (2, 0));
    let s = ProbeSettings::new(30);
    c.bench_function("cauchy_residual/100", |b| {
        b.iter(|| cauchy_residual(&op, &p, &x, &s).unwrap())
    });
}

criterion_group!(benches, eigenpolynomials, roots, diagnostics);
criterion_main!(benches);
