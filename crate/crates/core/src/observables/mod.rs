//! Closed-form physical predictions for the fluorescence of the exciton mode.

mod coherence;
mod dressed;
mod intensity;
mod spectrum;
mod squeezing;

use serde::{Deserialize, Serialize};

pub use coherence::{correlation_bb, g2};
pub use dressed::{
    dressed_manifold, hamiltonian_block, overlap, table_one, DressedManifold, Manifold,
};
pub use intensity::{intensity, intensity_ss};
pub use spectrum::{
    coherent_weight, incoherent_spectrum, spectrum, spectrum_peaks, Spectrum, SpectrumPeaks,
    SpectrumSample,
};
pub use squeezing::{quad_variance, quad_variance_ss, resonant_squeezing_ss, Quadrature};

/// Selects which sources contribute to the intensity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceToggle {
    /// Coherent pump (`epsilon`) terms.
    pub include_drive: bool,
    /// Squeezed reservoir (`N`, `M`) terms.
    pub include_squeezing: bool,
}

impl Default for SourceToggle {
    fn default() -> Self {
        Self::BOTH
    }
}

impl SourceToggle {
    pub const BOTH: Self = Self {
        include_drive: true,
        include_squeezing: true,
    };
    pub const DRIVE_ONLY: Self = Self {
        include_drive: true,
        include_squeezing: false,
    };
    pub const SQUEEZING_ONLY: Self = Self {
        include_drive: false,
        include_squeezing: true,
    };
}
