use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use eiko_bench::{off_core_bump, vortex};
use eiko_core::entropy::entropy_production;
use eiko_core::regularity::{gagliardo_seminorm, mollify, SeminormOptions};
use eiko_core::{Entropy, Tolerances, Vec2, Window};

fn seminorm(c: &mut Criterion) {
    let mut g = c.benchmark_group("gagliardo");
    g.sample_size(10);
    for n in [65usize, 129] {
        let u = vortex(n);
        let w = Window::annulus(Vec2::ZERO, 0.25, 0.5);
        g.bench_with_input(BenchmarkId::from_parameter(n), &u, |b, u| {
            b.iter(|| {
                gagliardo_seminorm(u, 1.0 / 3.0, 3.0, &w, &SeminormOptions::default()).unwrap()
            })
        });
    }
    g.finish();
}

fn mollification(c: &mut Criterion) {
    let u = vortex(257);
    let h = u.spec.h;
    let mut g = c.benchmark_group("mollify");
    for m in [2.0, 8.0] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| mollify(&u, black_box(m * h)).unwrap())
        });
    }
    g.finish();
}

fn production(c: &mut Criterion) {
    let u = vortex(257);
    let zeta = off_core_bump();
    let tol = Tolerances::default();
    let fourier = Entropy::from_fourier(vec![0.0, 0.3, 1.0, -0.2], vec![0.5, 0.0, 0.1]);
    let elementary = Entropy::approximate_elementary(Vec2::from_angle(0.4), 4);
    let mut g = c.benchmark_group("entropy_production");
    for (name, e) in [("fourier", &fourier), ("elementary", &elementary)] {
        g.bench_function(name, |b| {
            b.iter(|| entropy_production(e, &u, &zeta, &tol).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, seminorm, mollification, production);
criterion_main!(benches);
