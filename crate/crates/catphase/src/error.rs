//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when constructing states or evaluating the
/// closed forms and their quadrature counterparts.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter that must be finite was NaN or infinite.
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    /// A parameter violated a positivity or sign constraint.
    #[error("parameter `{name}` out of range: {reason} (got {value})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Amplitude pair does not satisfy |a|^2 + |b|^2 = 1 within 1e-12.
    #[error("amplitudes not normalized: |a|^2 + |b|^2 = {norm_sq}, expected 1 within 1e-12")]
    AmplitudeNormalization { norm_sq: f64 },

    /// The superposition annihilates: 1 + 2 I Re(a* b) is not positive.
    #[error("degenerate state: normalization denominator 1 + 2 I Re(a*b) = {denominator} <= tolerance")]
    DegenerateState { denominator: f64 },

    /// Post-selection amplitude too small for a meaningful weak value.
    #[error("weak value diverges: |a1| = {a1_abs} <= 1e-12")]
    DivergentWeakValue { a1_abs: f64 },

    /// The weak-regime expansion is invalid at this packet overlap.
    #[error("weak approximation invalid: packet overlap I = {inner_product} is below the weak-regime threshold {threshold}")]
    RegimeViolation { inner_product: f64, threshold: f64 },

    /// First-order phase expansion breaks down over the packet support.
    #[error("first-order expansion invalid: |p0 x (a2/a1) / hbar| = {magnitude} at x = 4 eta exceeds 1")]
    ExpansionOutOfRange { magnitude: f64 },

    /// Operation requires a real weak value.
    #[error("weak value has imaginary part {imaginary}; a real weak value is required here")]
    ImaginaryWeakValue { imaginary: f64 },

    /// A 1-D grid fails the span precondition of a density evaluation.
    #[error("grid spans [{got_min}, {got_max}] but must cover at least [{need_min}, {need_max}]")]
    GridTooNarrow {
        got_min: f64,
        got_max: f64,
        need_min: f64,
        need_max: f64,
    },

    /// A grid or scan specification is malformed.
    #[error("invalid grid/scan specification: {0}")]
    GridSpec(String),

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not converge: error estimate {achieved:.3e} exceeds tolerance {requested:.3e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },

    /// Quadrature of a nominally real quantity left a large imaginary residue.
    #[error("imaginary residue {residue:.3e} of a real-valued integral exceeds 1e-10")]
    ImaginaryResidue { residue: f64 },

    /// The Stern-Gerlach parameter inversion has no solution.
    #[error("no field/transit-time pair reproduces x0 = {x0}, p0 = {p0}; both must be positive")]
    UnsolvableInverse { x0: f64, p0: f64 },

    /// Field-region length inconsistent with the transit time.
    #[error("field-region length {d} inconsistent with p_y tau / m = {expected} (tolerance 1e-9)")]
    InconsistentTransit { d: f64, expected: f64 },
}

impl Error {
    /// Module that raised the error, for CLI diagnostics.
    pub fn module(&self) -> &'static str {
        match self {
            Error::NonFinite { .. }
            | Error::OutOfRange { .. }
            | Error::AmplitudeNormalization { .. }
            | Error::DegenerateState { .. }
            | Error::GridTooNarrow { .. } => "cat",
            Error::GridSpec(_) => "grid",
            Error::QuadratureNonConvergence { .. } | Error::ImaginaryResidue { .. } => "quad",
            Error::DivergentWeakValue { .. }
            | Error::RegimeViolation { .. }
            | Error::ExpansionOutOfRange { .. }
            | Error::ImaginaryWeakValue { .. } => "weak",
            Error::UnsolvableInverse { .. } | Error::InconsistentTransit { .. } => "sg",
        }
    }

    /// True for failures of numerical machinery (as opposed to bad inputs).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNonConvergence { .. } | Error::ImaginaryResidue { .. }
        )
    }
}
