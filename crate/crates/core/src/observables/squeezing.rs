use serde::{Deserialize, Serialize};

use crate::envelopes::{intensity_coeffs, variance_coeff_lambda4, FormulaVariant};
use crate::params::Model;

/// Quadratures `b_+ = b^dag + b` and `b_- = i (b^dag - b)`, with
/// `[b_+, b_-] = 2i` so the vacuum variance is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadrature {
    Plus,
    Minus,
}

impl Quadrature {
    pub fn sign(self) -> f64 {
        match self {
            Quadrature::Plus => 1.0,
            Quadrature::Minus => -1.0,
        }
    }
}

/// Steady excess `Delta b_sign^2 - 1`, written with `N - M = (e^{-2r} - 1)/2`
/// so the squeezed quadrature keeps full precision at large `r`.
fn steady_excess(m: &Model, sign: f64) -> f64 {
    let (g, mu, big_gamma, delta) = (m.g(), m.mu(), m.big_gamma(), m.delta());
    let prefactor = m.kappa() * g * g / (2.0 * big_gamma * mu * mu);
    let detuned = delta * delta / (delta * delta + 4.0 * big_gamma * big_gamma);
    let r = m.params.r;
    let bath = if sign > 0.0 {
        m.n_bath() + m.m_bath() * (1.0 - detuned)
    } else {
        (-2.0 * r).exp_m1() / 2.0 + m.m_bath() * detuned
    };
    prefactor * bath
}

/// Quadrature variance at time `t` for a single initial exciton and an empty
/// cavity. Independent of the pump: the drive only displaces the mean.
pub fn quad_variance(m: &Model, t: f64, quadrature: Quadrature, variant: FormulaVariant) -> f64 {
    let sign = quadrature.sign();
    let c = intensity_coeffs(m, t);
    let lambda4 = variance_coeff_lambda4(m, t, variant);
    let kappa = m.kappa();
    let transient = 2.0 * c.lambda1 + 2.0 * kappa * m.n_bath() * c.lambda2
        + sign * kappa * m.m_bath() * lambda4;
    1.0 + steady_excess(m, sign) + transient * (-2.0 * m.big_gamma() * t).exp()
}

/// Steady-state quadrature variance. Only `b_-` can drop below 1.
pub fn quad_variance_ss(m: &Model, quadrature: Quadrature) -> f64 {
    1.0 + steady_excess(m, quadrature.sign())
}

/// Steady `b_-` variance at zero detuning, `1 - kappa/(kappa+gamma) (1 - e^{-2r})`.
/// Bottoms out at 1/2 for `kappa = gamma` and infinite squeezing.
pub fn resonant_squeezing_ss(kappa: f64, gamma: f64, r: f64) -> f64 {
    1.0 - kappa / (kappa + gamma) * -(-2.0 * r).exp_m1()
}
