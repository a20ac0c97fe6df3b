use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::envelopes::FormulaVariant;
use crate::error::{Error, Result};
use crate::params::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Manifold {
    One,
    Two,
}

impl Manifold {
    pub fn excitations(self) -> u32 {
        match self {
            Manifold::One => 1,
            Manifold::Two => 2,
        }
    }

    /// Bare states `(excitons, photons)`, exciton number descending.
    pub fn basis(self) -> Vec<(u32, u32)> {
        let n = self.excitations();
        (0..=n).map(|k| (n - k, k)).collect()
    }
}

impl TryFrom<u8> for Manifold {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Manifold::One),
            2 => Ok(Manifold::Two),
            other => Err(Error::Manifold(other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DressedManifold {
    pub manifold: u32,
    /// Bare basis `|excitons, photons>` the coefficients refer to.
    pub basis: Vec<(u32, u32)>,
    /// Energy shifts in the cavity frame, descending.
    pub eigenvalues: Vec<f64>,
    /// One coefficient list per eigenvalue. Global phase fixed so the first
    /// non-negligible coefficient is real and positive.
    pub eigenvectors: Vec<Vec<Complex64>>,
}

/// `Delta b^dag b + i g (a^dag b - a b^dag)` restricted to a fixed number of
/// excitations.
pub fn hamiltonian_block(m: &Model, manifold: Manifold) -> DMatrix<Complex64> {
    let basis = manifold.basis();
    let dim = basis.len();
    let (g, delta) = (m.g(), m.delta());
    let index = |e: u32, p: u32| basis.iter().position(|&s| s == (e, p));
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, &(e, p)) in basis.iter().enumerate() {
        h[(col, col)] = Complex64::new(delta * e as f64, 0.0);
        // a^dag b moves an exciton into the cavity
        if e > 0 {
            if let Some(row) = index(e - 1, p + 1) {
                h[(row, col)] += Complex64::new(0.0, g * ((e * (p + 1)) as f64).sqrt());
            }
        }
        // a b^dag moves a photon into the well
        if p > 0 {
            if let Some(row) = index(e + 1, p - 1) {
                h[(row, col)] -= Complex64::new(0.0, g * ((p * (e + 1)) as f64).sqrt());
            }
        }
    }
    h
}

fn fix_phase(v: &mut [Complex64]) {
    if let Some(lead) = v.iter().copied().find(|z| z.norm() > 1e-8) {
        let phase = lead.conj() / lead.norm();
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

fn normalized(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

/// Dressed states of one excitation manifold by direct diagonalization.
pub fn dressed_manifold(m: &Model, manifold: Manifold) -> DressedManifold {
    let h = hamiltonian_block(m, manifold);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = order
        .iter()
        .map(|&i| {
            let mut v = normalized(eig.eigenvectors.column(i).iter().copied().collect());
            fix_phase(&mut v);
            v
        })
        .collect();
    DressedManifold {
        manifold: manifold.excitations(),
        basis: manifold.basis(),
        eigenvalues,
        eigenvectors,
    }
}

/// Tabulated dressed states.
///
/// `PaperLiteral` reproduces the printed table, including its normalizers
/// `sqrt(4g^2 + (Delta^2 +- 2mu)^2)`, the repeated `(Delta + 2mu)` in the
/// lower single-excitation state and the two-excitation coefficients, which
/// are eigenvectors only at zero detuning. `Corrected` builds the states from
/// the polariton creation operators and agrees with [`dressed_manifold`] up to
/// a global phase.
pub fn table_one(m: &Model, manifold: Manifold, variant: FormulaVariant) -> DressedManifold {
    let (g, delta, mu) = (m.g(), m.delta(), m.mu());
    let i = Complex64::i();
    let re = |x: f64| Complex64::new(x, 0.0);
    let sqrt2 = std::f64::consts::SQRT_2;

    let (eigenvalues, eigenvectors) = match (manifold, variant) {
        (Manifold::One, FormulaVariant::PaperLiteral) => {
            let chi = |s: f64| (4.0 * g * g + (delta * delta + s * 2.0 * mu).powi(2)).sqrt();
            let upper = vec![re(delta + 2.0 * mu) / chi(1.0), i * (2.0 * g) / chi(1.0)];
            let lower = vec![re(delta + 2.0 * mu) / chi(-1.0), i * (2.0 * g) / chi(-1.0)];
            (vec![delta / 2.0 + mu, delta / 2.0 - mu], vec![upper, lower])
        }
        (Manifold::Two, FormulaVariant::PaperLiteral) => {
            let chi = |s: f64| (4.0 * g * g + (delta * delta + s * 2.0 * mu).powi(2)).sqrt();
            let state = |middle: f64, norm: f64| {
                vec![-i * (sqrt2 * g) / norm, re(middle / norm), i * (sqrt2 * g) / norm]
            };
            (
                vec![delta + 2.0 * mu, delta, delta - 2.0 * mu],
                vec![
                    state(delta + 2.0 * mu, chi(1.0)),
                    state(delta, mu),
                    state(delta - 2.0 * mu, chi(-1.0)),
                ],
            )
        }
        (_, FormulaVariant::Corrected) => {
            let polariton = |s: f64| {
                let chi = (4.0 * g * g + (delta + s * 2.0 * mu).powi(2)).sqrt();
                (re((delta + s * 2.0 * mu) / chi), i * (2.0 * g / chi))
            };
            let (xp, yp) = polariton(1.0);
            let (xm, ym) = polariton(-1.0);
            match manifold {
                Manifold::One => (
                    vec![delta / 2.0 + mu, delta / 2.0 - mu],
                    vec![vec![xp, yp], vec![xm, ym]],
                ),
                Manifold::Two => (
                    vec![delta + 2.0 * mu, delta, delta - 2.0 * mu],
                    vec![
                        vec![xp * xp, xp * yp * sqrt2, yp * yp],
                        vec![xp * xm * sqrt2, xp * ym + yp * xm, yp * ym * sqrt2],
                        vec![xm * xm, xm * ym * sqrt2, ym * ym],
                    ],
                ),
            }
        }
    };
    DressedManifold {
        manifold: manifold.excitations(),
        basis: manifold.basis(),
        eigenvalues,
        eigenvectors,
    }
}

impl DressedManifold {
    /// Largest `||H v - lambda v||` over the listed states.
    pub fn max_residual(&self, h: &DMatrix<Complex64>) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .map(|(&lambda, v)| {
                let v = nalgebra::DVector::from_column_slice(v);
                (h * &v - v * Complex64::new(lambda, 0.0)).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// `|<u|v>|`, equal to one when two unit vectors differ by a global phase.
pub fn overlap(u: &[Complex64], v: &[Complex64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm()
}
