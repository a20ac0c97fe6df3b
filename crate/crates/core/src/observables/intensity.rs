use super::SourceToggle;
use crate::envelopes::intensity_coeffs;
use crate::params::Model;

/// Mean exciton number for a cavity starting in vacuum and a well holding
/// one exciton.
///
/// Switching off the squeezing drops the `N` terms; switching off the drive
/// drops the `epsilon` terms. The free decay of the initial exciton,
/// `lambda1 exp(-2 Gamma t)`, is kept in every case so the value at `t = 0`
/// is always one.
pub fn intensity(m: &Model, t: f64, toggle: SourceToggle) -> f64 {
    let (g, mu, big_gamma) = (m.g(), m.mu(), m.big_gamma());
    let drive = if toggle.include_drive {
        m.epsilon().powi(2) / (g * g)
    } else {
        0.0
    };
    let kappa_n = if toggle.include_squeezing {
        m.kappa() * m.n_bath()
    } else {
        0.0
    };
    let c = intensity_coeffs(m, t);
    let decay = (-big_gamma * t).exp();
    let decay2 = decay * decay;
    drive
        + g * g * kappa_n / (4.0 * big_gamma * mu * mu)
        + (c.lambda1 + kappa_n * c.lambda2) * decay2
        + drive * (c.lambda1 * decay2 - 2.0 * c.lambda3 * decay)
}

/// Steady-state mean exciton number. Independent of the reservoir phase
/// correlation `M`.
pub fn intensity_ss(m: &Model) -> f64 {
    let (g, mu) = (m.g(), m.mu());
    m.epsilon().powi(2) / (g * g) + g * g * m.kappa() * m.n_bath() / (4.0 * m.big_gamma() * mu * mu)
}
