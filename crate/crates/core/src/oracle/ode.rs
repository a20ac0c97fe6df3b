//! Adaptive Dormand–Prince 5(4) integration of complex ODE systems.

use num_complex::Complex64;

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DormandPrince {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Upper bound on the step; `f64::INFINITY` for none.
    pub max_step: f64,
}

impl Default for DormandPrince {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 5_000_000,
            max_step: f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

/// Output of a solve: one state per requested time.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex64>>,
    pub stats: SolveStats,
}

struct Work {
    k: [Vec<Complex64>; 7],
    tmp: Vec<Complex64>,
    next: Vec<Complex64>,
}

impl DormandPrince {
    pub fn with_tolerances(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            ..Self::default()
        }
    }

    /// Integrates `dy/dt = rhs(t, y)` from `times[0]` and records the state at
    /// every entry of `times`, which must be non-decreasing. Steps are clipped
    /// to land on each output time exactly.
    pub fn solve<F>(&self, mut rhs: F, y0: &[Complex64], times: &[f64]) -> Result<Solution>
    where
        F: FnMut(f64, &[Complex64], &mut [Complex64]),
    {
        if times.is_empty() || times.iter().any(|t| t.is_nan()) || times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::BadTimeGrid);
        }
        let n = y0.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut w = Work {
            k: std::array::from_fn(|_| vec![zero; n]),
            tmp: vec![zero; n],
            next: vec![zero; n],
        };
        let mut stats = SolveStats::default();
        let mut t = times[0];
        let mut y = y0.to_vec();
        rhs(t, &y, &mut w.k[0]);
        stats.evaluations += 1;

        let mut h = self.initial_step(&y, &w.k[0], times);
        let mut states = Vec::with_capacity(times.len());
        states.push(y.clone());

        for &target in &times[1..] {
            while t < target {
                if stats.accepted + stats.rejected >= self.max_steps {
                    return Err(Error::TooManySteps(self.max_steps));
                }
                let remaining = target - t;
                let last = h >= remaining;
                let step = if last { remaining } else { h.min(self.max_step) };
                if step < 1e-14 * t.abs().max(1.0) && !last {
                    return Err(Error::StepUnderflow { t, step });
                }
                let err = self.attempt(&mut rhs, t, step, &y, &mut w);
                stats.evaluations += 6;
                if err <= 1.0 {
                    stats.accepted += 1;
                    t = if last { target } else { t + step };
                    std::mem::swap(&mut y, &mut w.next);
                    // first-same-as-last: stage 7 is the derivative at the new point
                    let (first, rest) = w.k.split_at_mut(1);
                    first[0].copy_from_slice(&rest[5]);
                    let factor = if err == 0.0 {
                        MAX_FACTOR
                    } else {
                        (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
                    };
                    // keep the step length that was working before a clipped landing
                    if !last || step >= h {
                        h = step * factor;
                    }
                } else {
                    stats.rejected += 1;
                    h = step * (SAFETY * err.powf(-0.2)).max(MIN_FACTOR);
                    if h < 1e-14 * t.abs().max(1.0) {
                        return Err(Error::StepUnderflow { t, step: h });
                    }
                }
            }
            states.push(y.clone());
        }
        Ok(Solution {
            times: times.to_vec(),
            states,
            stats,
        })
    }

    fn initial_step(&self, y: &[Complex64], dy: &[Complex64], times: &[f64]) -> f64 {
        let span = times.last().unwrap() - times[0];
        let scale = |i: usize| self.atol + self.rtol * y[i].norm();
        let rms = |v: &[Complex64]| {
            (v.iter()
                .enumerate()
                .map(|(i, z)| (z.norm() / scale(i)).powi(2))
                .sum::<f64>()
                / v.len().max(1) as f64)
                .sqrt()
        };
        let d0 = rms(y);
        let d1 = rms(dy);
        let guess = if d0 < 1e-5 || d1 < 1e-5 {
            1e-6
        } else {
            0.01 * d0 / d1
        };
        let guess = guess.min(self.max_step);
        if span > 0.0 {
            guess.min(span)
        } else {
            guess
        }
    }

    /// One trial step. Leaves the candidate state in `w.next`, its derivative
    /// in `w.k[6]`, and returns the scaled error norm.
    // stage sums read several arrays at the same index
    #[allow(clippy::needless_range_loop)]
    fn attempt<F>(&self, rhs: &mut F, t: f64, h: f64, y: &[Complex64], w: &mut Work) -> f64
    where
        F: FnMut(f64, &[Complex64], &mut [Complex64]),
    {
        let n = y.len();
        let stage = |w: &mut Work, coeffs: &[(usize, f64)]| {
            for i in 0..n {
                let mut acc = y[i];
                for &(j, a) in coeffs {
                    acc += w.k[j][i] * (a * h);
                }
                w.tmp[i] = acc;
            }
        };

        stage(w, &[(0, A21)]);
        rhs(t + C2 * h, &w.tmp, &mut w.k[1]);
        stage(w, &[(0, A31), (1, A32)]);
        rhs(t + C3 * h, &w.tmp, &mut w.k[2]);
        stage(w, &[(0, A41), (1, A42), (2, A43)]);
        rhs(t + C4 * h, &w.tmp, &mut w.k[3]);
        stage(w, &[(0, A51), (1, A52), (2, A53), (3, A54)]);
        rhs(t + C5 * h, &w.tmp, &mut w.k[4]);
        stage(w, &[(0, A61), (1, A62), (2, A63), (3, A64), (4, A65)]);
        rhs(t + h, &w.tmp, &mut w.k[5]);
        for i in 0..n {
            w.next[i] = y[i]
                + (w.k[0][i] * A71
                    + w.k[2][i] * A73
                    + w.k[3][i] * A74
                    + w.k[4][i] * A75
                    + w.k[5][i] * A76)
                    * h;
        }
        {
            let (head, tail) = w.k.split_at_mut(6);
            rhs(t + h, &w.next, &mut tail[0]);
            let k7 = &tail[0];
            let mut sum = 0.0;
            for i in 0..n {
                let err = (head[0][i] * E1
                    + head[2][i] * E3
                    + head[3][i] * E4
                    + head[4][i] * E5
                    + head[5][i] * E6
                    + k7[i] * E7)
                    * h;
                let scale = self.atol + self.rtol * y[i].norm().max(w.next[i].norm());
                sum += (err.norm() / scale).powi(2);
            }
            (sum / n.max(1) as f64).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn complex_exponential() {
        let lambda = Complex64::new(-0.3, 4.0);
        let times: Vec<f64> = (0..=20).map(|k| k as f64 * 0.5).collect();
        let sol = DormandPrince::default()
            .solve(|_, y, dy| dy[0] = lambda * y[0], &[Complex64::new(1.0, 0.0)], &times)
            .unwrap();
        for (t, y) in sol.times.iter().zip(&sol.states) {
            let exact = (lambda * t).exp();
            assert!((y[0] - exact).norm() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn harmonic_oscillator_energy() {
        // y'' = -w^2 y as a complex first-order pair
        let w = 7.0;
        let times = [0.0, 3.0, 10.0];
        let sol = DormandPrince::default()
            .solve(
                |_, y, dy| {
                    dy[0] = y[1];
                    dy[1] = -y[0] * (w * w);
                },
                &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                &times,
            )
            .unwrap();
        let last = &sol.states[2];
        assert_relative_eq!(last[0].re, (w * 10.0).cos(), epsilon = 1e-8);
        assert!(sol.stats.accepted > 0);
    }

    #[test]
    fn lands_exactly_on_repeated_and_initial_times() {
        let sol = DormandPrince::default()
            .solve(|_, _, dy| dy[0] = Complex64::new(1.0, 0.0), &[Complex64::new(0.0, 0.0)], &[
                0.0, 0.0, 0.25, 1.0,
            ])
            .unwrap();
        assert_eq!(sol.states.len(), 4);
        assert_eq!(sol.states[1][0].re, 0.0);
        assert_relative_eq!(sol.states[3][0].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn rejects_decreasing_grid() {
        let err = DormandPrince::default()
            .solve(|_, _, _| {}, &[Complex64::new(0.0, 0.0)], &[0.0, 1.0, 0.5])
            .unwrap_err();
        assert_eq!(err, Error::BadTimeGrid);
    }

    #[test]
    fn blow_up_is_reported() {
        // y' = y^2 from y(0) = 1 explodes at t = 1
        let result = DormandPrince::default().solve(
            |_, y, dy| dy[0] = y[0] * y[0],
            &[Complex64::new(1.0, 0.0)],
            &[0.0, 2.0],
        );
        assert!(matches!(
            result,
            Err(Error::StepUnderflow { .. }) | Err(Error::TooManySteps(_))
        ));
    }
}
