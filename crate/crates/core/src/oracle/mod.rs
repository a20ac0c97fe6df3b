//! Independent numerical ground truth for the closed forms: exact moment
//! integration, regression correlators and a truncated-Fock master equation.

mod lindblad;
mod moments;
mod ode;
mod regression;

pub use lindblad::{lindblad_evolve, FockConfig, LindbladSample};
pub use moments::{
    drift_matrix, integrate_moments, integrate_moments_with, steady_state, DriftMatrix,
    MomentState,
};
pub use ode::{DormandPrince, SolveStats, Solution};
pub use regression::{
    correlation_incoherent, correlation_regression, g2_gaussian, spectrum_numeric,
    spectrum_numeric_with, FourierQuadrature,
};
