//! Fluorescence of a driven quantum-well microcavity whose cavity mode is
//! coupled to a squeezed vacuum reservoir.
//!
//! [`observables`] holds the strong-coupling closed forms, [`oracle`] the
//! exact numerical references they are checked against.

pub mod envelopes;
pub mod error;
pub mod observables;
pub mod oracle;
pub mod params;
pub mod peaks;

pub use envelopes::{EnvelopeSet, FormulaVariant, G2Coeffs, IntensityCoeffs};
pub use error::{Error, Result};
pub use observables::{Manifold, Quadrature, SourceToggle};
pub use params::{DerivedParams, Model, SystemParams, ValidationReport};

pub use num_complex::Complex64;
