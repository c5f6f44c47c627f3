//! Nonclassicality of a single bosonic mode, measured by the two-mode
//! entanglement it produces at a beam splitter with vacuum in the idle port.
//!
//! The measure needs only the second moments `<a^2>` and `<a^dagger a>` of the
//! input (after removing the displacement). From those the crate builds the
//! 4x4 output covariance matrix, its partially transposed symplectic
//! eigenvalues and the logarithmic negativity, and maximizes over the
//! beam-splitter transmission and phase.
//!
//! Besides the Gaussian machinery the crate carries:
//!
//! * [`fock`]: a truncated Fock-space oracle that applies the beam splitter to
//!   explicit state vectors and measures the covariance matrix directly.
//! * [`dicke`]: the collective atom-field Hamiltonian, a restarted Lanczos
//!   ground-state solver and extraction of the field moments.
//! * [`Execution`]: grid evaluations run on rayon when the `parallel` feature is
//!   enabled and fall back to plain iterators otherwise.

pub mod dicke;
mod error;
mod exec;
pub mod fock;
pub mod gaussian;
pub mod moments;
pub mod optimizer;

pub use error::{Error, Result};
pub use exec::Execution;
pub use gaussian::{
    covariance_from_input, dgcz_lambda, dgcz_simple, hz_condition, log_negativity, simon_lambda, symplectic_eta,
    BeamSplitterParams, CovarianceBlocks, NonclassicalityReport, SymplecticEta,
};
pub use moments::{
    center, squeezed_coherent_moments, validate_physical, CenteredMoments, SingleModeMoments, SqueezedCoherentParams,
    PHYSICALITY_TOL,
};
pub use optimizer::{
    en_at, maximize_en, maximize_en_over_theta, report_maximized, GridSpec, OptimizationResult, ThetaOptimum,
};
