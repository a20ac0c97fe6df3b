//! Steady-state two-time quantities from the regression theorem.
//!
//! Fluctuations evolve with the same drift as the means, so
//! `d<x_j^dag(0) dx(tau)>/dtau = A <x_j^dag(0) dx(tau)>` and every two-time
//! correlator is the exact propagator applied to an equal-time moment.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::Model;

use super::moments::{drift_matrix, steady_state, DriftMatrix, MomentState};

/// Equal-time data the two-time correlators are built from.
#[derive(Debug, Clone, Copy)]
struct Regression {
    drift: DriftMatrix,
    state: MomentState,
}

impl Regression {
    fn new(m: &Model) -> Self {
        Self {
            drift: drift_matrix(m),
            state: steady_state(m),
        }
    }

    /// `<db^dag(0) db(tau)>` and `<db(tau) db(0)>`.
    fn fluct(&self, tau: f64) -> (Complex64, Complex64) {
        let e = self.drift.propagator(tau);
        let pf = self.state.normal_fluct();
        let sf = self.state.anomalous_fluct();
        let normal = e[(1, 0)] * pf[(1, 0)] + e[(1, 1)] * pf[(1, 1)];
        let anomalous = e[(1, 0)] * sf[(0, 1)] + e[(1, 1)] * sf[(1, 1)];
        (normal, anomalous)
    }
}

fn check_delays(tau_grid: &[f64]) -> Result<()> {
    match tau_grid.iter().find(|t| t.is_nan() || **t < 0.0) {
        Some(&t) => Err(Error::NegativeTime(t)),
        None => Ok(()),
    }
}

/// Exact steady `<b^dag(0) b(tau)>`, coherent part included.
pub fn correlation_regression(m: &Model, tau_grid: &[f64]) -> Result<Vec<Complex64>> {
    check_delays(tau_grid)?;
    let reg = Regression::new(m);
    let coherent = reg.state.mean_b.norm_sqr();
    Ok(tau_grid.iter().map(|&tau| reg.fluct(tau).0 + coherent).collect())
}

/// Exact steady `<db^dag(0) db(tau)>`, the part that feeds the incoherent
/// spectrum.
pub fn correlation_incoherent(m: &Model, tau_grid: &[f64]) -> Result<Vec<Complex64>> {
    check_delays(tau_grid)?;
    let reg = Regression::new(m);
    Ok(tau_grid.iter().map(|&tau| reg.fluct(tau).0).collect())
}

/// Steady `g2(tau)` with fourth moments reduced by Wick factorization
/// around the nonzero mean.
pub fn g2_gaussian(m: &Model, tau_grid: &[f64]) -> Result<Vec<f64>> {
    check_delays(tau_grid)?;
    let reg = Regression::new(m);
    let beta = reg.state.mean_b;
    let b2 = beta.norm_sqr();
    let n = reg.state.normal_fluct()[(1, 1)].re;
    let intensity = b2 + n;
    if m.epsilon() == 0.0 && m.params.r == 0.0 || intensity <= 0.0 {
        return Err(Error::DegenerateIntensity);
    }
    Ok(tau_grid
        .iter()
        .map(|&tau| {
            let (c, s) = reg.fluct(tau);
            let num = b2 * b2
                + b2 * (2.0 * n + 2.0 * c.re)
                + 2.0 * (beta.conj() * beta.conj() * s).re
                + n * n
                + c.norm_sqr()
                + s.norm_sqr();
            num / (intensity * intensity)
        })
        .collect())
}

/// Controls for [`spectrum_numeric_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierQuadrature {
    /// Integration window; chosen from the slowest decay rate when `None`.
    pub window: Option<f64>,
    /// Quadrature step as a fraction of the fastest correlator period
    /// `1/max|lambda|`.
    pub step_fraction: f64,
    /// Largest tolerated `|C(T)| / |C(0)|` at the end of the window.
    pub tail_limit: f64,
}

impl Default for FourierQuadrature {
    fn default() -> Self {
        Self {
            window: None,
            step_fraction: 0.02,
            tail_limit: 1e-8,
        }
    }
}

/// Incoherent spectrum `(1/pi) Re int_0^T exp(i w tau) <db^dag(0) db(tau)> dtau`
/// by Filon quadrature on a piecewise-linear interpolant of the exact
/// correlator. Frequencies are offsets from the cavity frame.
pub fn spectrum_numeric(m: &Model, omega_grid: &[f64]) -> Result<Vec<f64>> {
    spectrum_numeric_with(m, omega_grid, &FourierQuadrature::default())
}

pub fn spectrum_numeric_with(
    m: &Model,
    omega_grid: &[f64],
    quad: &FourierQuadrature,
) -> Result<Vec<f64>> {
    let reg = Regression::new(m);
    let c0 = reg.fluct(0.0).0.norm();
    if c0 == 0.0 {
        return Ok(vec![0.0; omega_grid.len()]);
    }
    let decay = reg.drift.slowest_decay();
    let window = quad
        .window
        .unwrap_or_else(|| (1.0 / (0.01 * quad.tail_limit)).ln() / decay);
    let fastest = reg
        .drift
        .eigenvalues()
        .iter()
        .map(|l| l.norm())
        .fold(0.0, f64::max);
    let target_step = quad.step_fraction / fastest;
    let steps = (window / target_step).ceil().max(1.0) as usize;
    let h = window / steps as f64;

    let samples: Vec<Complex64> = (0..=steps).map(|k| reg.fluct(k as f64 * h).0).collect();

    // last stretch of the window, at least one slow period long
    let period = 2.0 * std::f64::consts::PI / fastest.max(decay);
    let tail_from = ((window - period.max(0.1 * window)) / h).floor().max(0.0) as usize;
    let tail = samples[tail_from..]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        / c0;
    if tail > quad.tail_limit {
        return Err(Error::WindowTooShort {
            window,
            ratio: tail,
            limit: quad.tail_limit,
        });
    }

    Ok(omega_grid
        .par_iter()
        .map(|&omega| filon_linear(&samples, h, omega) / std::f64::consts::PI)
        .collect())
}

/// `Re int_0^{nh} exp(i w t) f(t) dt` for `f` linear between samples.
fn filon_linear(samples: &[Complex64], h: f64, omega: f64) -> f64 {
    let theta = omega * h;
    let (w0, w1) = filon_weights(theta);
    let lead = w0 - w1;
    let step = Complex64::from_polar(1.0, theta);
    let mut phase = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, pair) in samples.windows(2).enumerate() {
        // resynchronize the running phase to bound rounding drift
        if k % 1024 == 0 {
            phase = Complex64::from_polar(1.0, theta * k as f64);
        }
        acc += phase * (pair[0] * lead + pair[1] * w1);
        phase *= step;
    }
    (acc * h).re
}

/// `w0 = int_0^1 e^{i theta u} du`, `w1 = int_0^1 u e^{i theta u} du`.
fn filon_weights(theta: f64) -> (Complex64, Complex64) {
    let i = Complex64::new(0.0, 1.0);
    if theta.abs() < 1e-3 {
        let z = i * theta;
        let w0 = 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0 + z * z * z * z / 120.0;
        let w1 = 0.5 + z / 3.0 + z * z / 8.0 + z * z * z / 30.0 + z * z * z * z / 144.0;
        (w0, w1)
    } else {
        let e = Complex64::from_polar(1.0, theta);
        let it = i * theta;
        let w0 = (e - 1.0) / it;
        let w1 = e / it + (e - 1.0) / (theta * theta);
        (w0, w1)
    }
}
