use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use polariton_bench::{driven_squeezed, linspace};
use polariton_core::observables::{
    dressed_manifold, g2, intensity, quad_variance, spectrum, SourceToggle,
};
use polariton_core::{FormulaVariant, Manifold, Quadrature};

fn closed_forms(c: &mut Criterion) {
    let m = driven_squeezed();
    let times = linspace(0.0, 10.0, 1001);
    let omegas = linspace(-15.0, 15.0, 1201);

    c.bench_function("intensity_1001", |b| {
        b.iter(|| {
            times
                .iter()
                .map(|&t| intensity(black_box(&m), t, SourceToggle::BOTH))
                .sum::<f64>()
        })
    });
    c.bench_function("variance_1001", |b| {
        b.iter(|| {
            times
                .iter()
                .map(|&t| quad_variance(black_box(&m), t, Quadrature::Minus, FormulaVariant::Corrected))
                .sum::<f64>()
        })
    });
    c.bench_function("g2_1001", |b| {
        b.iter(|| times.iter().map(|&t| g2(black_box(&m), t).unwrap()).sum::<f64>())
    });
    c.bench_function("spectrum_1201", |b| {
        b.iter(|| spectrum(black_box(&m), &omegas, FormulaVariant::Corrected))
    });
    c.bench_function("dressed_two", |b| {
        b.iter(|| dressed_manifold(black_box(&m), Manifold::Two))
    });
}

criterion_group!(benches, closed_forms);
criterion_main!(benches);
