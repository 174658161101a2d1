use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cubiprox::oracle::suites::{random_convex_quartic, random_cubic, random_saddle_gamma, random_vec};
use cubiprox::oracle::{reciprocal_prox, roots_by_bisection, seeded_rng};
use cubiprox::{project_epigraph, prox_perspective, LabeledPoint, ReciprocalFn, SaddleKind, SaddleSet};
use rand::Rng;

const BATCH: usize = 1024;

fn cubic(c: &mut Criterion) {
    let mut rng = seeded_rng(1);
    let corpus: Vec<_> = (0..BATCH).map(|_| random_cubic(&mut rng).unwrap()).collect();
    let mut g = c.benchmark_group("cubic");
    g.bench_function("solve", |b| b.iter(|| corpus.iter().map(|f| f.solve().distinct_count()).sum::<usize>()));
    g.bench_function("classify", |b| b.iter(|| corpus.iter().filter(|f| f.classify().delta < 0.0).count()));
    g.bench_function("bisection_oracle", |b| {
        b.iter(|| corpus.iter().map(|f| roots_by_bisection(f, 1e-12).len()).sum::<usize>())
    });
    g.finish();
}

fn quartic(c: &mut Criterion) {
    let mut rng = seeded_rng(2);
    let cases: Vec<_> =
        (0..BATCH).map(|_| (random_convex_quartic(&mut rng).unwrap(), rng.random_range(-100.0..100.0))).collect();
    let mut g = c.benchmark_group("quartic");
    g.bench_function("prox", |b| b.iter(|| cases.iter().map(|(h, y)| h.prox(*y).unwrap()).sum::<f64>()));
    g.bench_function("conjugate", |b| {
        b.iter(|| cases.iter().map(|(h, y)| h.conjugate(*y).unwrap().value).sum::<f64>())
    });
    g.finish();
}

fn reciprocal(c: &mut Criterion) {
    let mut rng = seeded_rng(3);
    let cases: Vec<(f64, f64)> =
        (0..BATCH).map(|_| (rng.random_range(0.1..10.0), rng.random_range(-50.0..50.0))).collect();
    let mut g = c.benchmark_group("reciprocal");
    g.bench_function("prox", |b| {
        b.iter(|| cases.iter().map(|&(a, y)| ReciprocalFn::new(a).unwrap().prox(y).unwrap()).sum::<f64>())
    });
    g.bench_function("log_grid_oracle", |b| {
        b.iter(|| cases[..16].iter().map(|&(a, y)| reciprocal_prox(a, y)).sum::<f64>())
    });
    g.finish();
}

fn projections(c: &mut Criterion) {
    let mut rng = seeded_rng(4);
    let epi: Vec<(f64, LabeledPoint)> = (0..BATCH)
        .map(|_| {
            let alpha = rng.random_range(0.1..3.0);
            let v = random_vec(&mut rng, 3, 3.0);
            let eta = rng.random_range(-5.0..10.0);
            (alpha, LabeledPoint::new(v, eta).unwrap())
        })
        .collect();
    let persp: Vec<(f64, LabeledPoint)> = (0..BATCH)
        .map(|_| {
            let gamma = rng.random_range(0.1..5.0);
            let v = random_vec(&mut rng, 3, 3.0);
            (gamma, LabeledPoint::new(v, rng.random_range(-5.0..5.0)).unwrap())
        })
        .collect();
    let saddle: Vec<(SaddleSet, SaddleKind, Vec<f64>, f64)> = (0..BATCH)
        .map(|_| {
            let set = SaddleSet::new(rng.random_range(0.2..3.0), rng.random_range(0.2..3.0)).unwrap();
            let kind = if rng.random_bool(0.5) { SaddleKind::AntiDiag } else { SaddleKind::Diag };
            let z = random_vec(&mut rng, 3, 2.0);
            let zeta = z.iter().map(|v| v * v).sum::<f64>().sqrt();
            let gamma = random_saddle_gamma(&mut rng, &set, kind, zeta);
            (set, kind, z, gamma)
        })
        .collect();

    let mut g = c.benchmark_group("projection");
    g.bench_function("epigraph", |b| {
        b.iter(|| epi.iter().map(|(a, p)| project_epigraph(*a, black_box(p)).unwrap().shift).sum::<f64>())
    });
    g.bench_function("saddle", |b| {
        b.iter(|| saddle.iter().map(|(s, k, z, gm)| s.project(*k, black_box(z), *gm).unwrap().x).sum::<f64>())
    });
    g.bench_function("perspective", |b| {
        b.iter(|| persp.iter().map(|(gm, p)| prox_perspective(*gm, black_box(p)).unwrap().lambda).sum::<f64>())
    });
    g.finish();
}

criterion_group!(benches, cubic, quartic, reciprocal, projections);
criterion_main!(benches);
