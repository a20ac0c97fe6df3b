//! Exact first and second moments of the linear Langevin system.
//!
//! With `x = (a, b)` the means obey `dm/dt = A m + c`. The normally ordered
//! moments `P_ij = <x_i^dag x_j>` and `S_ij = <x_i x_j>` obey
//!
//! ```text
//! dP/dt = conj(A) P + P A^T + conj(c) m^T + conj(m) c^T + diag(kappa N, 0)
//! dS/dt = A S + S A^T + c m^T + m c^T + diag(kappa M, 0)
//! ```
//!
//! in the frame rotating at the cavity (drive) frequency.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::observables::Quadrature;
use crate::params::Model;

use super::ode::DormandPrince;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficients of `d(a, b)/dt = A (a, b) + c + noise`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix {
    pub matrix: Matrix2<Complex64>,
    pub drive: Vector2<Complex64>,
}

impl DriftMatrix {
    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Eigenvalues ordered by increasing imaginary part.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let half_trace = self.trace() / 2.0;
        let s = self.split();
        let (lo, hi) = (half_trace - s, half_trace + s);
        if lo.im <= hi.im {
            [lo, hi]
        } else {
            [hi, lo]
        }
    }

    /// `s` with eigenvalues `tr/2 +- s`.
    pub(crate) fn split(&self) -> Complex64 {
        let m = &self.matrix;
        let half_diff = (m[(0, 0)] - m[(1, 1)]) / 2.0;
        (half_diff * half_diff + m[(0, 1)] * m[(1, 0)]).sqrt()
    }

    /// Slowest decay rate, `-max Re(lambda)`.
    pub fn slowest_decay(&self) -> f64 {
        -self
            .eigenvalues()
            .iter()
            .map(|l| l.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Exact propagator `exp(A tau)` in Cayley–Hamilton form.
    pub fn propagator(&self, tau: f64) -> Matrix2<Complex64> {
        let half_trace = self.trace() / 2.0;
        let s = self.split();
        let z = s * tau;
        let cosh = z.cosh();
        // sinh(s tau)/s, regular at s = 0
        let sinh_over_s = if z.norm() < 1e-4 {
            tau * (Complex64::new(1.0, 0.0) + z * z / 6.0 + z * z * z * z / 120.0)
        } else {
            z.sinh() / s
        };
        let shifted = self.matrix - Matrix2::identity() * half_trace;
        (Matrix2::identity() * cosh + shifted * sinh_over_s) * (half_trace * tau).exp()
    }
}

/// The exact drift of the model, with no strong-coupling approximation.
pub fn drift_matrix(m: &Model) -> DriftMatrix {
    let p = &m.params;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    DriftMatrix {
        matrix: Matrix2::new(
            c(-p.kappa / 2.0, 0.0),
            c(p.g, 0.0),
            c(-p.g, 0.0),
            c(-p.gamma / 2.0, -p.delta),
        ),
        drive: Vector2::new(c(p.epsilon, 0.0), ZERO),
    }
}

/// All first and second moments of the two modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentState {
    pub mean_a: Complex64,
    pub mean_b: Complex64,
    /// `<a^dag a>`
    pub n_aa: f64,
    /// `<b^dag b>`
    pub n_bb: f64,
    /// `<a^dag b>`
    pub c_ab: Complex64,
    /// `<a^2>`
    pub s_aa: Complex64,
    /// `<b^2>`
    pub s_bb: Complex64,
    /// `<a b>`
    pub s_ab: Complex64,
}

impl MomentState {
    pub fn vacuum() -> Self {
        Self {
            mean_a: ZERO,
            mean_b: ZERO,
            n_aa: 0.0,
            n_bb: 0.0,
            c_ab: ZERO,
            s_aa: ZERO,
            s_bb: ZERO,
            s_ab: ZERO,
        }
    }

    /// Empty cavity and a single exciton.
    pub fn vacuum_with_exciton() -> Self {
        Self {
            n_bb: 1.0,
            ..Self::vacuum()
        }
    }

    pub fn means(&self) -> Vector2<Complex64> {
        Vector2::new(self.mean_a, self.mean_b)
    }

    /// `P_ij = <x_i^dag x_j>`.
    pub fn normal(&self) -> Matrix2<Complex64> {
        Matrix2::new(
            Complex64::new(self.n_aa, 0.0),
            self.c_ab,
            self.c_ab.conj(),
            Complex64::new(self.n_bb, 0.0),
        )
    }

    /// `S_ij = <x_i x_j>`.
    pub fn anomalous(&self) -> Matrix2<Complex64> {
        Matrix2::new(self.s_aa, self.s_ab, self.s_ab, self.s_bb)
    }

    /// Normal moments of the fluctuations `x - <x>`.
    pub fn normal_fluct(&self) -> Matrix2<Complex64> {
        let m = self.means();
        self.normal() - m.map(|z| z.conj()) * m.transpose()
    }

    pub fn anomalous_fluct(&self) -> Matrix2<Complex64> {
        let m = self.means();
        self.anomalous() - m * m.transpose()
    }

    fn from_parts(m: Vector2<Complex64>, p: Matrix2<Complex64>, s: Matrix2<Complex64>) -> Self {
        Self {
            mean_a: m[0],
            mean_b: m[1],
            n_aa: p[(0, 0)].re,
            n_bb: p[(1, 1)].re,
            c_ab: (p[(0, 1)] + p[(1, 0)].conj()) / 2.0,
            s_aa: s[(0, 0)],
            s_bb: s[(1, 1)],
            s_ab: (s[(0, 1)] + s[(1, 0)]) / 2.0,
        }
    }

    fn pack(&self) -> [Complex64; 8] {
        [
            self.mean_a,
            self.mean_b,
            Complex64::new(self.n_aa, 0.0),
            self.c_ab,
            Complex64::new(self.n_bb, 0.0),
            self.s_aa,
            self.s_ab,
            self.s_bb,
        ]
    }

    fn unpack(y: &[Complex64]) -> Self {
        Self {
            mean_a: y[0],
            mean_b: y[1],
            n_aa: y[2].re,
            c_ab: y[3],
            n_bb: y[4].re,
            s_aa: y[5],
            s_ab: y[6],
            s_bb: y[7],
        }
    }

    /// `<(b^dag + b)^2> - <b^dag + b>^2` for `Plus`, and likewise for
    /// `i (b^dag - b)`. Vacuum gives 1.
    pub fn quad_variance(&self, quadrature: Quadrature) -> f64 {
        let sign = quadrature.sign();
        let mean = match quadrature {
            Quadrature::Plus => 2.0 * self.mean_b.re,
            Quadrature::Minus => 2.0 * self.mean_b.im,
        };
        1.0 + 2.0 * self.n_bb + sign * 2.0 * self.s_bb.re - mean * mean
    }

    /// Gram matrix `G_ij = <xi_i^dag xi_j>` of the fluctuation vector
    /// `xi = (da, db, da^dag, db^dag)`. Physical states have `G >= 0`.
    pub fn gram(&self) -> Matrix4<Complex64> {
        let pf = self.normal_fluct();
        let sf = self.anomalous_fluct();
        Matrix4::from_fn(|i, j| match (i < 2, j < 2) {
            (true, true) => pf[(i, j)],
            (true, false) => sf[(j - 2, i)].conj(),
            (false, true) => sf[(i - 2, j)],
            (false, false) => {
                let id = if i == j { 1.0 } else { 0.0 };
                pf[(j - 2, i - 2)] + id
            }
        })
    }

    /// Smallest eigenvalue of [`Self::gram`].
    pub fn min_gram_eigenvalue(&self) -> f64 {
        let g = self.gram();
        let herm = (g + g.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_physical(&self, tol: f64) -> bool {
        self.n_aa >= -1e-10 && self.n_bb >= -1e-10 && self.min_gram_eigenvalue() >= -tol
    }

    /// Time derivative of every moment under the exact drift.
    pub fn derivative(&self, model: &Model) -> MomentState {
        let d = drift_matrix(model);
        let (dm, dp, ds) = rates(
            &d,
            noise(model),
            self.means(),
            self.normal(),
            self.anomalous(),
        );
        Self::from_parts(dm, dp, ds)
    }

    /// Largest absolute component of [`Self::derivative`].
    pub fn drift_residual(&self, model: &Model) -> f64 {
        self.derivative(model)
            .pack()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

fn noise(m: &Model) -> (f64, f64) {
    (m.kappa() * m.n_bath(), m.kappa() * m.m_bath())
}

fn rates(
    d: &DriftMatrix,
    (kn, km): (f64, f64),
    m: Vector2<Complex64>,
    p: Matrix2<Complex64>,
    s: Matrix2<Complex64>,
) -> (Vector2<Complex64>, Matrix2<Complex64>, Matrix2<Complex64>) {
    let a = d.matrix;
    let c = d.drive;
    let cc = c.map(|z| z.conj());
    let mc = m.map(|z| z.conj());
    let dm = a * m + c;
    let mut dp = a.map(|z| z.conj()) * p + p * a.transpose() + cc * m.transpose() + mc * c.transpose();
    dp[(0, 0)] += kn;
    let mut ds = a * s + s * a.transpose() + c * m.transpose() + m * c.transpose();
    ds[(0, 0)] += km;
    (dm, dp, ds)
}

/// Integrates all moments from `init` over `t_grid` (starting at 0) with the
/// default tolerances.
pub fn integrate_moments(m: &Model, init: &MomentState, t_grid: &[f64]) -> Result<Vec<MomentState>> {
    integrate_moments_with(m, init, t_grid, &DormandPrince::default())
}

pub fn integrate_moments_with(
    m: &Model,
    init: &MomentState,
    t_grid: &[f64],
    solver: &DormandPrince,
) -> Result<Vec<MomentState>> {
    if t_grid.first() != Some(&0.0) {
        return Err(crate::error::Error::BadTimeGrid);
    }
    let d = drift_matrix(m);
    let nz = noise(m);
    let rhs = |_: f64, y: &[Complex64], dy: &mut [Complex64]| {
        let st = MomentState::unpack(y);
        // the full Hermitian P keeps conj symmetry of c_ab exact
        let (dm, dp, ds) = rates(&d, nz, st.means(), st.normal(), st.anomalous());
        dy[0] = dm[0];
        dy[1] = dm[1];
        dy[2] = dp[(0, 0)];
        dy[3] = dp[(0, 1)];
        dy[4] = dp[(1, 1)];
        dy[5] = ds[(0, 0)];
        dy[6] = ds[(0, 1)];
        dy[7] = ds[(1, 1)];
    };
    let sol = solver.solve(rhs, &init.pack(), t_grid)?;
    Ok(sol.states.iter().map(|y| MomentState::unpack(y)).collect())
}

/// Exact steady state from the linear algebraic equations.
pub fn steady_state(m: &Model) -> MomentState {
    let d = drift_matrix(m);
    let a = d.matrix;
    let means = -a.lu().solve(&d.drive).expect("drift matrix is Hurwitz");
    let (kn, km) = noise(m);

    // fluctuations: conj(A) Pf + Pf A^T + diag(kN, 0) = 0, vectorized row-major
    let id = Matrix2::<Complex64>::identity();
    let ac = a.map(|z| z.conj());
    let lyap_p = kron(&ac, &id) + kron(&id, &a);
    let lyap_s = kron(&a, &id) + kron(&id, &a);
    let rhs_p = Vector4::new(Complex64::new(-kn, 0.0), ZERO, ZERO, ZERO);
    let rhs_s = Vector4::new(Complex64::new(-km, 0.0), ZERO, ZERO, ZERO);
    let pf = lyap_p.lu().solve(&rhs_p).expect("regular Lyapunov operator");
    let sf = lyap_s.lu().solve(&rhs_s).expect("regular Lyapunov operator");
    let pf = Matrix2::new(pf[0], pf[1], pf[2], pf[3]);
    let sf = Matrix2::new(sf[0], sf[1], sf[2], sf[3]);

    let p = pf + means.map(|z| z.conj()) * means.transpose();
    let s = sf + means * means.transpose();
    MomentState::from_parts(means, p, s)
}

/// `(X kron Y)` so that `X Z + Z Y^T` maps to `(X kron I + I kron Y) vec(Z)`
/// for row-major `vec`.
fn kron(x: &Matrix2<Complex64>, y: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|i, j| x[(i / 2, j / 2)] * y[(i % 2, j % 2)])
}
