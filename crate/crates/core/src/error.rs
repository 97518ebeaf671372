//! Error type shared by all modules.
//!
//! Diagnostic payloads are stored as `f64` regardless of the scalar the
//! computation ran at; they are for messages, not further arithmetic.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation point inside the exclusion ball of a vortex (or of the
    /// logarithmic singularity at the origin).
    #[error("point ({x}, {y}) is within the singular exclusion ball of vortex {index}")]
    SingularPoint { index: usize, x: f64, y: f64 },

    /// A scalar argument violated its stated domain.
    #[error("{what} = {value} outside {bounds}")]
    Domain {
        what: &'static str,
        value: f64,
        bounds: &'static str,
    },

    /// Structurally invalid input (ordering, lengths, missing strengths).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Linear system too close to singular for the requested solve.
    #[error("matrix numerically singular: |det| = {det:e} below tolerance {tol:e}")]
    SingularMatrix { det: f64, tol: f64 },

    /// A root finder was handed an interval without a sign change.
    #[error("no sign change on [{a}, {b}]: f(a) = {fa:e}, f(b) = {fb:e}")]
    BracketFailure { a: f64, b: f64, fa: f64, fb: f64 },

    /// The singular-configuration homotopy found no determinant sign change.
    #[error("singular-configuration search failed; sampled determinants {0:?}")]
    SearchFailure(Vec<f64>),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature error estimate {estimate:e} above target {target:e}")]
    QuadratureNonConvergence { estimate: f64, target: f64 },

    /// Profile data does not decay enough for the requested transform.
    #[error("profile tail {tail:e} exceeds decay threshold {threshold:e}; extend the grid")]
    InsufficientDecay { tail: f64, threshold: f64 },

    /// Integrator step violates the per-step displacement guard.
    #[error("step |v| dt = {step:e} exceeds the guard {limit:e}; reduce dt")]
    StepTooLarge { step: f64, limit: f64 },

    /// Elementary closed form requested beyond its overflow guard.
    #[error("|x| = {x} beyond the elementary-form guard x_max = {x_max}")]
    ElementaryOverflow { x: f64, x_max: f64 },

    /// arcosh of an argument below one.
    #[error("arcosh argument {0} < 1")]
    ArcoshDomain(f64),

    /// A differentiation stencil would leave the map's domain.
    #[error("differentiation stencil (step {step:e}) exits the domain of scale {scale:e}")]
    DifferentiationStep { step: f64, scale: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
