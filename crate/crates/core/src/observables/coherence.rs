use num_complex::Complex64;

use crate::envelopes::{g2_coeffs, FormulaVariant};
use crate::error::{Error, Result};
use crate::params::Model;

/// Steady-state `<b^dag(t) b(t + tau)>` in the cavity frame.
///
/// The decaying part oscillates as `exp(-(Gamma + i delta/2) tau)`, the same
/// phase as the envelopes. `PaperLiteral` uses the printed `exp(-(Gamma + i delta) tau)`.
pub fn correlation_bb(m: &Model, tau: f64, variant: FormulaVariant) -> Complex64 {
    let (g, mu, big_gamma) = (m.g(), m.mu(), m.big_gamma());
    let phase_rate = match variant {
        FormulaVariant::Corrected => m.delta() / 2.0,
        FormulaVariant::PaperLiteral => m.delta(),
    };
    let amplitude = m.kappa() * m.n_bath() * g * g / (4.0 * big_gamma * mu.powi(3));
    let (s, c) = (mu * tau).sin_cos();
    let decay = Complex64::from_polar((-big_gamma * tau).exp(), -phase_rate * tau);
    let coherent = m.epsilon().powi(2) / (g * g);
    decay * (amplitude * (mu * c + big_gamma * s)) + coherent
}

/// Normalized second-order correlation of the fluorescence in steady state.
pub fn g2(m: &Model, tau: f64) -> Result<f64> {
    let intensity = super::intensity_ss(m);
    if intensity <= 0.0 {
        return Err(Error::DegenerateIntensity);
    }
    let (g, kappa, n, mm) = (m.g(), m.kappa(), m.n_bath(), m.m_bath());
    let c = g2_coeffs(m, tau);
    let decay = (-m.big_gamma() * tau).exp();
    let squeezed = kappa * kappa / 4.0 * (4.0 * mm * mm * c.a3 + n * n * c.a2 * c.a2);
    let interference = kappa * m.epsilon().powi(2) / (g * g)
        * (mm * c.a1 + n * c.a2 * (m.delta() * tau / 2.0).cos());
    Ok(1.0 + (squeezed * decay * decay + interference * decay) / (intensity * intensity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::intensity_ss;
    use crate::params::SystemParams;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn correlator_at_zero_delay_is_intensity() {
        let m = Model::new(SystemParams::new(5.0, 1.2, 1.0, 2.0, 7.0, 1.8)).unwrap();
        let c = correlation_bb(&m, 0.0, FormulaVariant::Corrected);
        assert_relative_eq!(c.re, intensity_ss(&m), max_relative = 1e-12);
        assert!(c.im.abs() < 1e-12);
    }

    #[test]
    fn correlator_decays_to_coherent_offset() {
        let m = Model::new(SystemParams::new(5.0, 1.2, 1.0, 2.0, 7.0, 1.8)).unwrap();
        let c = correlation_bb(&m, 100.0, FormulaVariant::Corrected);
        assert_relative_eq!(c.re, 49.0 / 25.0, max_relative = 1e-12);
        assert!(c.im.abs() < 1e-12);
    }

    #[test]
    fn correlator_on_resonance_without_drive() {
        let m = Model::new(SystemParams::new(5.0, 1.2, 1.0, 0.0, 0.0, 1.0)).unwrap();
        let (big_gamma, n) = (0.55, 1f64.sinh().powi(2));
        for tau in [0.0, 0.3, 1.1, 2.5] {
            let expected = 1.2 * n / (4.0 * big_gamma * 5.0)
                * (-big_gamma * tau).exp()
                * (5.0 * (5.0 * tau).cos() + big_gamma * (5.0 * tau).sin());
            let c = correlation_bb(&m, tau, FormulaVariant::Corrected);
            assert_relative_eq!(c.re, expected, epsilon = 1e-14);
            assert_eq!(c.im, 0.0);
        }
    }

    #[test]
    fn printed_exponent_differs_only_when_detuned() {
        let resonant = Model::new(SystemParams::new(5.0, 1.2, 1.0, 0.0, 0.0, 1.0)).unwrap();
        let detuned = Model::new(SystemParams::new(5.0, 1.2, 1.0, 2.0, 0.0, 1.0)).unwrap();
        let tau = 0.7;
        let diff = |m: &Model| {
            (correlation_bb(m, tau, FormulaVariant::Corrected)
                - correlation_bb(m, tau, FormulaVariant::PaperLiteral))
            .norm()
        };
        assert_eq!(diff(&resonant), 0.0);
        assert!(diff(&detuned) > 1e-2);
    }

    #[test]
    fn coherent_light_is_poissonian() {
        let m = Model::new(SystemParams::new(5.0, 1.2, 1.0, 1.0, 3.0, 0.0)).unwrap();
        for tau in [0.0, 0.5, 3.0] {
            assert_eq!(g2(&m, tau).unwrap(), 1.0);
        }
    }

    #[test]
    fn squeezed_vacuum_on_resonance() {
        for r in [0.5f64, 1.0, 2.0] {
            let m = Model::new(SystemParams::new(5.0, 1.2, 1.0, 0.0, 0.0, r)).unwrap();
            let n = r.sinh().powi(2);
            assert_relative_eq!(g2(&m, 0.0).unwrap(), 3.0 + 1.0 / n, max_relative = 1e-12);
        }
        let m = Model::new(SystemParams::new(5.0, 1.2, 1.0, 0.0, 0.0, 1.0)).unwrap();
        assert_relative_eq!(g2(&m, 0.0).unwrap(), 3.7241, epsilon = 1e-4);
    }

    #[test]
    fn degenerate_without_sources() {
        let m = Model::new(SystemParams::new(5.0, 1.2, 1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(g2(&m, 0.0), Err(Error::DegenerateIntensity));
    }

    proptest! {
        #[test]
        fn bunched_and_uncorrelated_at_long_delay(
            g in 3.0f64..40.0, delta in -5.0f64..5.0, eps in 0.0f64..10.0, r in 0.05f64..2.5,
        ) {
            let m = Model::new(SystemParams::new(g, 1.2, 1.0, delta, eps, r)).unwrap();
            prop_assert!(g2(&m, 0.0).unwrap() > 1.0);
            let far = g2(&m, 50.0 / m.big_gamma()).unwrap();
            prop_assert!((far - 1.0).abs() <= 1e-6);
        }

        #[test]
        fn correlator_identity(
            g in 3.0f64..40.0, delta in -5.0f64..5.0, eps in 0.0f64..10.0, r in 0.0f64..2.5,
        ) {
            let m = Model::new(SystemParams::new(g, 1.2, 1.0, delta, eps, r)).unwrap();
            let c = correlation_bb(&m, 0.0, FormulaVariant::Corrected);
            let i = intensity_ss(&m);
            prop_assert!((c.re - i).abs() <= 1e-12 * i.max(1.0));
            prop_assert!(c.im.abs() <= 1e-12);
        }
    }
}
