use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::envelopes::FormulaVariant;
use crate::params::Model;

/// One point of the incoherent spectrum.
///
/// `omega_offset` is measured from the rotating-frame (cavity/drive)
/// frequency, which is where the two polariton lines sit at
/// `delta/2 +- mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub omega_offset: f64,
    pub incoherent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Weight of the delta-function (coherent) line, reported once.
    pub coherent_weight: f64,
    pub samples: Vec<SpectrumSample>,
    pub variant: FormulaVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPeaks {
    /// Upper and lower polariton lines, `delta/2 + mu` and `delta/2 - mu`.
    pub centers: [f64; 2],
    /// Half width at half maximum of each line, `Gamma`.
    pub hwhm: f64,
    /// Full width at half maximum, `2 Gamma`.
    pub fwhm: f64,
}

/// Weight of the coherent line.
///
/// With the spectrum normalized as `(1/pi) Re int_0^inf e^{i w tau} C(tau)`,
/// the constant part `epsilon^2/g^2` of the correlator becomes
/// `(epsilon^2/g^2) delta(w)`, so the full spectrum integrates to the steady
/// intensity. The printed weight carries an extra `1/(2 pi)`.
pub fn coherent_weight(m: &Model, variant: FormulaVariant) -> f64 {
    let w = m.epsilon().powi(2) / m.g().powi(2);
    match variant {
        FormulaVariant::Corrected => w,
        FormulaVariant::PaperLiteral => w / (2.0 * PI),
    }
}

/// Incoherent spectral density: two Lorentzians of half-width `Gamma` with
/// frequency-dependent numerators, the exact half-line Fourier transform of
/// the decaying part of [`super::correlation_bb`].
pub fn incoherent_spectrum(m: &Model, omega_offset: f64) -> f64 {
    let (g, delta, mu, big_gamma) = (m.g(), m.delta(), m.mu(), m.big_gamma());
    let x = omega_offset;
    let gg = big_gamma * big_gamma;
    let upper = (delta + 4.0 * mu - 2.0 * x) / (gg + (delta / 2.0 + mu - x).powi(2));
    let lower = (-delta + 4.0 * mu + 2.0 * x) / (gg + (delta / 2.0 - mu - x).powi(2));
    m.kappa() * m.n_bath() * g * g / (16.0 * PI * mu.powi(3)) * (upper + lower)
}

pub fn spectrum(m: &Model, omega_grid: &[f64], variant: FormulaVariant) -> Spectrum {
    Spectrum {
        coherent_weight: coherent_weight(m, variant),
        samples: omega_grid
            .iter()
            .map(|&omega_offset| SpectrumSample {
                omega_offset,
                incoherent: incoherent_spectrum(m, omega_offset),
            })
            .collect(),
        variant,
    }
}

pub fn spectrum_peaks(m: &Model) -> SpectrumPeaks {
    let half = m.delta() / 2.0;
    SpectrumPeaks {
        centers: [half + m.mu(), half - m.mu()],
        hwhm: m.big_gamma(),
        fwhm: 2.0 * m.big_gamma(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::SystemParams;
    use crate::peaks::locate_peaks;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
        let n = ((hi - lo) / step).round() as usize;
        (0..=n).map(|k| lo + k as f64 * step).collect()
    }

    #[test]
    fn no_coherent_line_without_drive() {
        let m = Model::new(SystemParams::new(6.0, 1.2, 1.0, 0.0, 0.0, 1.0)).unwrap();
        assert_eq!(coherent_weight(&m, FormulaVariant::Corrected), 0.0);
        assert_eq!(coherent_weight(&m, FormulaVariant::PaperLiteral), 0.0);
        let driven = Model::new(SystemParams::new(6.0, 1.2, 1.0, 0.0, 3.0, 1.0)).unwrap();
        assert_relative_eq!(coherent_weight(&driven, FormulaVariant::Corrected), 0.25);
        assert_relative_eq!(
            coherent_weight(&driven, FormulaVariant::PaperLiteral),
            0.25 / (2.0 * PI)
        );
    }

    #[test]
    fn nominal_peaks() {
        let m = Model::new(SystemParams::new(6.0, 1.2, 1.0, 0.0, 0.0, 1.0)).unwrap();
        let p = spectrum_peaks(&m);
        assert_eq!(p.centers, [6.0, -6.0]);
        assert_relative_eq!(p.hwhm, 0.55);
        assert_relative_eq!(p.fwhm, 1.1);

        let m = Model::new(SystemParams::new(6.0, 1.2, 1.0, 2.0, 0.0, 1.0)).unwrap();
        let p = spectrum_peaks(&m);
        assert_relative_eq!(p.centers[0], 1.0 + 37f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(p.centers[1], 1.0 - 37f64.sqrt(), max_relative = 1e-15);

        let m = Model::new(SystemParams::new(1e-9, 1.2, 1.0, 3.0, 0.0, 1.0)).unwrap();
        let p = spectrum_peaks(&m);
        assert_relative_eq!(p.centers[0], 3.0, epsilon = 1e-12);
        assert!(p.centers[1].abs() < 1e-12);
    }

    #[test]
    fn resonant_lines_sit_at_plus_minus_g() {
        let m = Model::new(SystemParams::new(6.0, 1.2, 1.0, 0.0, 0.0, 1.0)).unwrap();
        let step = 0.55 / 20.0;
        let xs = grid(-15.0, 15.0, step);
        let ys: Vec<f64> = xs.iter().map(|&x| incoherent_spectrum(&m, x)).collect();
        let peaks = locate_peaks(&xs, &ys, 0.05);
        assert_eq!(peaks.len(), 2);
        assert!((peaks[0].center + 6.0).abs() <= step);
        assert!((peaks[1].center - 6.0).abs() <= step);
    }

    #[test]
    fn detuned_line_widths() {
        let m = Model::new(SystemParams::new(6.0, 1.2, 1.0, 2.0, 0.0, 1.0)).unwrap();
        // the line maxima sit a few hundredths off delta/2 +- mu, inside one step
        let step = 0.55 / 20.0;
        let xs = grid(-20.0, 20.0, step);
        let ys: Vec<f64> = xs.iter().map(|&x| incoherent_spectrum(&m, x)).collect();
        let peaks = locate_peaks(&xs, &ys, 0.05);
        assert_eq!(peaks.len(), 2);
        assert!((peaks[0].center - (1.0 - 37f64.sqrt())).abs() <= step);
        assert!((peaks[1].center - (1.0 + 37f64.sqrt())).abs() <= step);
        for p in &peaks {
            assert_relative_eq!(p.fwhm, 1.1, max_relative = 0.05);
        }
    }

    #[test]
    fn sum_rule() {
        for delta in [0.0, 2.0, 4.0] {
            let m = Model::new(SystemParams::new(6.0, 1.2, 1.0, delta, 0.0, 1.0)).unwrap();
            let step = 0.01;
            let xs = grid(-400.0, 400.0, step);
            let total: f64 = xs.iter().map(|&x| incoherent_spectrum(&m, x)).sum::<f64>() * step;
            let squeezed = crate::observables::intensity_ss(&m);
            assert_relative_eq!(total, squeezed, max_relative = 1e-2);
        }
    }

    proptest! {
        #[test]
        fn nonnegative(
            g in 0.5f64..40.0, kappa in 0.1f64..3.0, gamma in 0.1f64..3.0,
            delta in -10.0f64..10.0, r in 0.0f64..3.0, x in -500.0f64..500.0,
        ) {
            let m = Model::new(SystemParams::new(g, kappa, gamma, delta, 0.0, r)).unwrap();
            prop_assert!(incoherent_spectrum(&m, x) >= 0.0);
        }
    }
}
