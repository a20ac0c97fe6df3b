//! Physical inputs, derived constants and regime diagnostics.
//!
//! All rates share one unit. The conventional normalization is `gamma = 1`,
//! so every other rate reads directly as a multiple of the exciton decay rate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this value of `g / max(kappa, gamma)` the strong-coupling closed
/// forms are flagged as unreliable. Never fatal.
pub const STRONG_COUPLING_THRESHOLD: f64 = 3.0;

/// The six physical inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Exciton-photon coupling rate.
    pub g: f64,
    /// Cavity decay rate.
    pub kappa: f64,
    /// Exciton spontaneous decay rate.
    pub gamma: f64,
    /// Exciton-photon detuning `omega_0 - omega_c` (signed).
    pub delta: f64,
    /// Real pump amplitude.
    pub epsilon: f64,
    /// Squeeze parameter of the cavity reservoir.
    pub r: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            g: 5.0,
            kappa: 1.2,
            gamma: 1.0,
            delta: 0.0,
            epsilon: 0.0,
            r: 1.0,
        }
    }
}

impl SystemParams {
    pub fn new(g: f64, kappa: f64, gamma: f64, delta: f64, epsilon: f64, r: f64) -> Self {
        Self {
            g,
            kappa,
            gamma,
            delta,
            epsilon,
            r,
        }
    }

    pub fn with_g(mut self, g: f64) -> Self {
        self.g = g;
        self
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    /// Multiplies every rate (and the pump amplitude) by `s`; `r` is
    /// dimensionless and unchanged.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            g: self.g * s,
            kappa: self.kappa * s,
            gamma: self.gamma * s,
            delta: self.delta * s,
            epsilon: self.epsilon * s,
            r: self.r,
        }
    }

    fn named(&self) -> [(&'static str, f64); 6] {
        [
            ("g", self.g),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("epsilon", self.epsilon),
            ("r", self.r),
        ]
    }

    fn check_finite(&self) -> Result<()> {
        for (name, value) in self.named() {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        Ok(())
    }

    /// Derived constants. Rejects non-finite inputs; sign constraints are the
    /// job of [`SystemParams::validate`].
    pub fn derive(&self) -> Result<DerivedParams> {
        self.check_finite()?;
        let big_gamma = (self.kappa + self.gamma) / 4.0;
        let mu = self.g.hypot(self.delta / 2.0);
        let sinh = self.r.sinh();
        let n_bath = sinh * sinh;
        let m_bath = sinh * self.r.cosh();
        let chi = |sign: f64| (2.0 * self.g).hypot(self.delta + sign * 2.0 * mu);
        Ok(DerivedParams {
            big_gamma,
            mu,
            n_bath,
            m_bath,
            chi_plus: chi(1.0),
            chi_minus: chi(-1.0),
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut warnings = Vec::new();
        let mut fatal = false;
        for (name, value) in self.named() {
            if !value.is_finite() {
                warnings.push(format!("{name} = {value} is not finite"));
                fatal = true;
            }
        }
        for (name, value) in [("g", self.g), ("kappa", self.kappa), ("gamma", self.gamma)] {
            if value <= 0.0 {
                warnings.push(format!("{name} = {value} must be > 0"));
                fatal = true;
            }
        }
        for (name, value) in [("epsilon", self.epsilon), ("r", self.r)] {
            if value < 0.0 {
                warnings.push(format!("{name} = {value} must be >= 0"));
                fatal = true;
            }
        }
        let strong_coupling_ratio = self.g / self.kappa.max(self.gamma);
        if !fatal && strong_coupling_ratio < STRONG_COUPLING_THRESHOLD {
            warnings.push(format!(
                "g / max(kappa, gamma) = {strong_coupling_ratio:.3} < {STRONG_COUPLING_THRESHOLD}: \
                 outside the strong-coupling regime, closed forms are approximate"
            ));
        }
        ValidationReport {
            strong_coupling_ratio,
            warnings,
            fatal,
        }
    }
}

/// Constants computed once from [`SystemParams`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// Combined half-width `(kappa + gamma) / 4`.
    pub big_gamma: f64,
    /// Polariton half-splitting `sqrt(g^2 + delta^2 / 4)`.
    pub mu: f64,
    /// Reservoir mean photon number `sinh^2 r`.
    pub n_bath: f64,
    /// Reservoir phase correlation `sinh r cosh r`.
    pub m_bath: f64,
    /// `sqrt(4 g^2 + (delta + 2 mu)^2)`, norm of the upper polariton coefficients.
    pub chi_plus: f64,
    /// `sqrt(4 g^2 + (delta - 2 mu)^2)`, norm of the lower polariton coefficients.
    pub chi_minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// `g / max(kappa, gamma)`.
    pub strong_coupling_ratio: f64,
    pub warnings: Vec<String>,
    /// Set iff a hard constraint on the inputs is violated.
    pub fatal: bool,
}

/// Validated parameters bundled with their derived constants. Every
/// closed-form observable takes one of these.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    pub params: SystemParams,
    pub derived: DerivedParams,
}

impl Model {
    pub fn new(params: SystemParams) -> Result<Self> {
        let derived = params.derive()?;
        let report = params.validate();
        if report.fatal {
            return Err(Error::InvalidParams(report));
        }
        Ok(Self { params, derived })
    }

    #[inline]
    pub fn g(&self) -> f64 {
        self.params.g
    }

    #[inline]
    pub fn kappa(&self) -> f64 {
        self.params.kappa
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        self.params.delta
    }

    #[inline]
    pub fn epsilon(&self) -> f64 {
        self.params.epsilon
    }

    #[inline]
    pub fn big_gamma(&self) -> f64 {
        self.derived.big_gamma
    }

    #[inline]
    pub fn mu(&self) -> f64 {
        self.derived.mu
    }

    #[inline]
    pub fn n_bath(&self) -> f64 {
        self.derived.n_bath
    }

    #[inline]
    pub fn m_bath(&self) -> f64 {
        self.derived.m_bath
    }
}
