//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by contour quadrature, transform evaluation and the
/// bound/resummation layers.
#[derive(Debug, Error)]
pub enum MeroError {
    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not converge: estimated error {estimate:.3e} above tolerance {tol:.3e} after {evaluations} evaluations")]
    NonConvergence {
        estimate: f64,
        tol: f64,
        evaluations: u64,
    },

    /// Integrand magnitude exceeded the overflow guard near a sample point.
    #[error("integrand magnitude {magnitude:.3e} exceeds overflow guard near z = {at}")]
    PoleTooClose { at: num_complex::Complex64, magnitude: f64 },

    /// A contour point violates the declared clearance to a pole.
    #[error("contour point {at} within clearance {clearance:.3e} of pole {pole}")]
    ClearanceViolated {
        at: num_complex::Complex64,
        pole: num_complex::Complex64,
        clearance: f64,
    },

    /// An infinite ray was integrated without a tail envelope.
    #[error("infinite ray requires a tail decay envelope")]
    MissingTailEnvelope,

    /// Parameters outside the declared W x U domain (or other preconditions).
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// A declared analytic hypothesis failed its numerical spot check.
    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),

    /// Laplace transform requested outside its admissibility sector.
    #[error("inadmissible Laplace parameters: cos(θ - θ_γ) = {cos_value:.6} must exceed |γ|·α = {threshold:.6}")]
    Inadmissible { cos_value: f64, threshold: f64 },

    /// Malformed configuration (bad parameter, missing handle, ...).
    #[error("configuration error: {0}")]
    Config(String),
}

impl MeroError {
    /// Process exit code for the CLI layer: 2 for domain errors, 3 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            MeroError::DomainViolation(_) | MeroError::Inadmissible { .. } => 2,
            MeroError::Config(_) => 1,
            _ => 3,
        }
    }

    /// Stable machine-readable kind tag.
    pub fn kind(&self) -> &'static str {
        match self {
            MeroError::NonConvergence { .. } => "non_convergence",
            MeroError::PoleTooClose { .. } => "pole_too_close",
            MeroError::ClearanceViolated { .. } => "clearance_violated",
            MeroError::MissingTailEnvelope => "missing_tail_envelope",
            MeroError::DomainViolation(_) => "domain_violation",
            MeroError::HypothesisFailure(_) => "hypothesis_failure",
            MeroError::Inadmissible { .. } => "inadmissible",
            MeroError::Config(_) => "config",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, MeroError>;
