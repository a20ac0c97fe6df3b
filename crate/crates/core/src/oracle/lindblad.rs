//! Truncated-Fock master equation for the cavity and exciton modes.
//!
//! `H = delta b^dag b + i epsilon (a^dag - a) + i g (a^dag b - a b^dag)` in the
//! cavity frame. The cavity sees a squeezed reservoir,
//!
//! ```text
//! kappa (N+1) D[a] + kappa N D[a^dag]
//!   - kappa M (a^dag rho a^dag - {a^dag^2, rho}/2) - kappa M (a rho a - {a^2, rho}/2)
//! ```
//!
//! and the exciton decays into vacuum at rate `gamma`. These are exactly the
//! dissipators whose moment equations reproduce the linear Langevin drift.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Model;

use super::ode::DormandPrince;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockConfig {
    pub cavity_dim: usize,
    pub exciton_dim: usize,
    /// Spacing of the recorded samples. The integrator itself is adaptive.
    pub dt: f64,
    pub t_max: f64,
    pub rtol: f64,
    /// Largest tolerated population on the top Fock level of either mode.
    pub tail_limit: f64,
}

impl FockConfig {
    pub fn new(cavity_dim: usize, exciton_dim: usize, dt: f64, t_max: f64) -> Self {
        Self {
            cavity_dim,
            exciton_dim,
            dt,
            t_max,
            rtol: 1e-10,
            tail_limit: 1e-6,
        }
    }

    pub fn dim(&self) -> usize {
        self.cavity_dim * self.exciton_dim
    }

    fn sample_times(&self) -> Result<Vec<f64>> {
        if !(self.dt > 0.0 && self.t_max >= 0.0 && self.dt.is_finite() && self.t_max.is_finite()) {
            return Err(Error::BadTimeGrid);
        }
        let n = (self.t_max / self.dt).round() as usize;
        let mut times: Vec<f64> = (0..=n).map(|k| k as f64 * self.dt).collect();
        if let Some(last) = times.last_mut() {
            *last = last.min(self.t_max);
        }
        if times.last() != Some(&self.t_max) {
            times.push(self.t_max);
        }
        Ok(times)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LindbladSample {
    pub t: f64,
    pub n_aa: f64,
    pub n_bb: f64,
    pub mean_b: Complex64,
    /// `<b^2>`
    pub s_bb: Complex64,
    pub var_plus: f64,
    pub var_minus: f64,
    pub trace: f64,
    /// Population on the top level of either truncated mode.
    pub tail_mass: f64,
}

/// Row-compressed operator.
#[derive(Debug, Clone)]
struct Sparse {
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl Sparse {
    fn from_dense(m: &DMatrix<Complex64>) -> Self {
        let rows = (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .filter(|&j| m[(i, j)] != ZERO)
                    .map(|j| (j, m[(i, j)]))
                    .collect()
            })
            .collect();
        Self { rows }
    }

    /// Row `i` of `out += s * (self . rho)`, all row-major `d x d`.
    fn left_row(&self, i: usize, rho: &[Complex64], s: Complex64, dst: &mut [Complex64]) {
        let d = dst.len();
        for &(k, v) in &self.rows[i] {
            let c = v * s;
            for (o, x) in dst.iter_mut().zip(&rho[k * d..(k + 1) * d]) {
                *o += c * x;
            }
        }
    }

    /// One row of `out += s * (rho . self)`, given the matching row of `rho`.
    fn right_row(&self, src: &[Complex64], s: Complex64, dst: &mut [Complex64]) {
        for (row, x) in self.rows.iter().zip(src) {
            if *x == ZERO {
                continue;
            }
            let x = x * s;
            for &(j, v) in row {
                dst[j] += x * v;
            }
        }
    }

    #[cfg(test)]
    fn left(&self, rho: &[Complex64], s: Complex64, out: &mut [Complex64]) {
        let d = self.rows.len();
        for (i, dst) in out.chunks_mut(d).enumerate() {
            self.left_row(i, rho, s, dst);
        }
    }

    #[cfg(test)]
    fn right(&self, rho: &[Complex64], s: Complex64, out: &mut [Complex64]) {
        let d = self.rows.len();
        for (src, dst) in rho.chunks(d).zip(out.chunks_mut(d)) {
            self.right_row(src, s, dst);
        }
    }
}

struct Jump {
    rate: f64,
    left: Sparse,
    right: Sparse,
}

struct Generator {
    dim: usize,
    heff: Sparse,
    heff_dag: Sparse,
    jumps: Vec<Jump>,
}

impl Generator {
    /// `out = L(rho)`. Rows of the result are independent, so each pass runs
    /// in parallel over them.
    fn apply(&self, rho: &[Complex64], out: &mut [Complex64], scratch: &mut [Complex64]) {
        let d = self.dim;
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        out.par_chunks_mut(d).enumerate().for_each(|(row, dst)| {
            dst.fill(ZERO);
            self.heff.left_row(row, rho, -i, dst);
            self.heff_dag.right_row(&rho[row * d..(row + 1) * d], i, dst);
        });
        for jump in &self.jumps {
            scratch.par_chunks_mut(d).enumerate().for_each(|(row, dst)| {
                dst.fill(ZERO);
                jump.left.left_row(row, rho, one, dst);
            });
            let rate = Complex64::new(jump.rate, 0.0);
            out.par_chunks_mut(d)
                .zip(scratch.par_chunks(d))
                .for_each(|(dst, src)| jump.right.right_row(src, rate, dst));
        }
    }
}

/// Ladder operators on the product space, index `n_a * exciton_dim + n_b`.
struct Ladders {
    a: DMatrix<Complex64>,
    b: DMatrix<Complex64>,
}

fn ladders(cfg: &FockConfig) -> Ladders {
    let (ca, cb) = (cfg.cavity_dim, cfg.exciton_dim);
    let d = ca * cb;
    let mut a = DMatrix::zeros(d, d);
    let mut b = DMatrix::zeros(d, d);
    for na in 0..ca {
        for nb in 0..cb {
            let i = na * cb + nb;
            if na > 0 {
                a[((na - 1) * cb + nb, i)] = Complex64::new((na as f64).sqrt(), 0.0);
            }
            if nb > 0 {
                b[(i - 1, i)] = Complex64::new((nb as f64).sqrt(), 0.0);
            }
        }
    }
    Ladders { a, b }
}

fn generator(m: &Model, cfg: &FockConfig) -> Generator {
    let p = &m.params;
    let Ladders { a, b } = ladders(cfg);
    let ad = a.adjoint();
    let bd = b.adjoint();
    let re = |x: f64| Complex64::new(x, 0.0);
    let i = Complex64::new(0.0, 1.0);

    let h = &bd * &b * re(p.delta) + (&ad - &a) * (i * p.epsilon) + (&ad * &b - &a * &bd) * (i * p.g);
    let (n, mm) = (m.n_bath(), m.m_bath());
    let terms: Vec<(f64, &DMatrix<Complex64>, &DMatrix<Complex64>)> = vec![
        (p.kappa * (n + 1.0), &a, &ad),
        (p.kappa * n, &ad, &a),
        (-p.kappa * mm, &ad, &ad),
        (-p.kappa * mm, &a, &a),
        (p.gamma, &b, &bd),
    ];
    let d = cfg.dim();
    let mut k = DMatrix::<Complex64>::zeros(d, d);
    for (rate, left, right) in &terms {
        k += *right * *left * re(*rate);
    }
    let heff = &h - &k * (i * 0.5);
    let heff_dag = heff.adjoint();
    Generator {
        dim: d,
        heff: Sparse::from_dense(&heff),
        heff_dag: Sparse::from_dense(&heff_dag),
        jumps: terms
            .iter()
            .filter(|(rate, _, _)| *rate != 0.0)
            .map(|(rate, left, right)| Jump {
                rate: *rate,
                left: Sparse::from_dense(left),
                right: Sparse::from_dense(right),
            })
            .collect(),
    }
}

fn observe(t: f64, rho: &[Complex64], cfg: &FockConfig) -> LindbladSample {
    let (ca, cb) = (cfg.cavity_dim, cfg.exciton_dim);
    let d = ca * cb;
    let at = |i: usize, j: usize| rho[i * d + j];
    let (mut trace, mut n_aa, mut n_bb, mut tail) = (0.0, 0.0, 0.0, 0.0);
    let (mut mean_b, mut s_bb) = (ZERO, ZERO);
    for na in 0..ca {
        for nb in 0..cb {
            let i = na * cb + nb;
            let pop = at(i, i).re;
            trace += pop;
            n_aa += na as f64 * pop;
            n_bb += nb as f64 * pop;
            if na == ca - 1 || nb == cb - 1 {
                tail += pop;
            }
            // Tr(b rho) = sum sqrt(nb) rho[i, i-1]
            if nb >= 1 {
                mean_b += at(i, i - 1) * (nb as f64).sqrt();
            }
            if nb >= 2 {
                s_bb += at(i, i - 2) * ((nb * (nb - 1)) as f64).sqrt();
            }
        }
    }
    let plus_mean = 2.0 * mean_b.re;
    let minus_mean = 2.0 * mean_b.im;
    LindbladSample {
        t,
        n_aa,
        n_bb,
        mean_b,
        s_bb,
        var_plus: 1.0 + 2.0 * n_bb + 2.0 * s_bb.re - plus_mean * plus_mean,
        var_minus: 1.0 + 2.0 * n_bb - 2.0 * s_bb.re - minus_mean * minus_mean,
        trace,
        tail_mass: tail,
    }
}

/// Evolves `|0_a, 1_b>` and samples every `cfg.dt` up to `cfg.t_max`.
///
/// Fails with [`Error::TruncationTail`] at the first sample whose top-level
/// population exceeds `cfg.tail_limit`.
pub fn lindblad_evolve(m: &Model, cfg: &FockConfig) -> Result<Vec<LindbladSample>> {
    if cfg.cavity_dim < 2 || cfg.exciton_dim < 2 {
        return Err(Error::FockDims {
            cavity: cfg.cavity_dim,
            exciton: cfg.exciton_dim,
        });
    }
    let times = cfg.sample_times()?;
    let gen = generator(m, cfg);
    let d = cfg.dim();
    let mut rho0 = vec![ZERO; d * d];
    rho0[d + 1] = Complex64::new(1.0, 0.0); // index 1 is n_a = 0, n_b = 1
    let mut scratch = vec![ZERO; d * d];
    let solver = DormandPrince::with_tolerances(cfg.rtol, cfg.rtol * 1e-3);
    let sol = solver.solve(
        |_, rho, out| gen.apply(rho, out, &mut scratch),
        &rho0,
        &times,
    )?;
    let mut samples = Vec::with_capacity(times.len());
    for (t, rho) in times.iter().zip(&sol.states) {
        let s = observe(*t, rho, cfg);
        if s.tail_mass > cfg.tail_limit {
            return Err(Error::TruncationTail {
                mass: s.tail_mass,
                t: *t,
                limit: cfg.tail_limit,
            });
        }
        samples.push(s);
    }
    Ok(samples)
}
