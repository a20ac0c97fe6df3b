//! Shared fixtures for the benchmarks under `benches/`.

use polariton_core::{Model, SystemParams};

/// Strong-coupling working point with both sources on.
pub fn driven_squeezed() -> Model {
    Model::new(SystemParams::new(5.0, 1.2, 1.0, 2.0, 7.0, 1.8)).expect("valid parameters")
}

pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| start + (stop - start) * k as f64 / (n - 1) as f64)
        .collect()
}
