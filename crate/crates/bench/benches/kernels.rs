use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dualkit::oracle::numerov_eigen_unchecked;
use dualkit::orbits::map_orbit_samples;
use dualkit::quantum::{confinement_state, coulomb_green, hooke_eigenfunction_l};
use dualkit::semiclassical::{action_j, wkb_spectrum};
use dualkit::specfun::{whittaker_m, whittaker_w};
use dualkit::susy::cbc_quantize;
use dualkit_bench::*;

fn special_functions(c: &mut Criterion) {
    let mut group = c.benchmark_group("whittaker");
    for (i, (k, mu, x)) in WHITTAKER_ARGS.into_iter().enumerate() {
        group.bench_with_input(BenchmarkId::new("M", i), &(k, mu, x), |b, &(k, mu, x)| {
            b.iter(|| whittaker_m(black_box(k), black_box(mu), black_box(x)))
        });
        group.bench_with_input(BenchmarkId::new("W", i), &(k, mu, x), |b, &(k, mu, x)| {
            b.iter(|| whittaker_w(black_box(k), black_box(mu), black_box(x)))
        });
    }
    group.finish();
}

fn semiclassical(c: &mut Criterion) {
    let coulomb = coulomb_system();
    c.bench_function("action_j/coulomb", |b| b.iter(|| action_j(&coulomb, black_box(-0.125))));
    let frac = fractional_system();
    c.bench_function("wkb_spectrum/fractional_n4", |b| b.iter(|| wkb_spectrum(&frac, black_box(4))));
    let sp = oscillator_superpotential();
    c.bench_function("cbc_quantize/oscillator_n4", |b| b.iter(|| cbc_quantize(&sp, black_box(4), 0)));
}

fn quantum(c: &mut Criterion) {
    c.bench_function("coulomb_green", |b| {
        b.iter(|| coulomb_green(black_box(0.7), black_box(2.3), -0.3, 0.5, 1.0, 1.0, 1.0))
    });
    c.bench_function("hooke_eigenfunction/norm", |b| {
        b.iter(|| hooke_eigenfunction_l(black_box(2), 1.5, 1.0, 1.0, 1.0).and_then(|p| p.norm_squared()))
    });
    c.bench_function("confinement_state", |b| b.iter(|| confinement_state(black_box(1), 1, 3, 1.0, 0.5, 1.0)));
}

fn oracle(c: &mut Criterion) {
    let grid = coulomb_grid();
    let mut group = c.benchmark_group("numerov");
    group.sample_size(20);
    group.bench_function("coulomb_ground", |b| {
        b.iter(|| numerov_eigen_unchecked(|r: f64| -1.0 / r, 0.5, 1.0, 1.0, black_box(0), &grid))
    });
    group.finish();
}

fn orbits(c: &mut Criterion) {
    let orbit = kepler_ellipse();
    c.bench_function("map_orbit_samples/256", |b| b.iter(|| map_orbit_samples(&orbit, 1.0, black_box(256))));
}

criterion_group!(benches, special_functions, semiclassical, quantum, oracle, orbits);
criterion_main!(benches);
