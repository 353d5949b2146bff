use thiserror::Error;

/// Errors raised by the closed forms, the oracles and the optimizers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("cat qubit basis is degenerate: |amplitude|^2 = {amplitude_sq:e} is below {threshold:e}")]
    DegenerateBasis { amplitude_sq: f64, threshold: f64 },

    #[error("overdamped regime: N g^2 = {coupling_sq:e} <= (gamma/4)^2 = {damping_sq:e}")]
    OverdampedRegime { coupling_sq: f64, damping_sq: f64 },

    #[error("capacity exceeded: {what} needs {required} states, limit is {limit}")]
    CapacityExceeded { what: &'static str, required: usize, limit: usize },

    #[error("Fock truncation too small: discarded Poisson tail mass {tail:e}")]
    TruncationTooSmall { tail: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Lindblad step size unstable: halving the step changed outputs by {change:e}")]
    StepSizeUnstable { change: f64 },

    #[error("qubit projection leaks {weight:e} of the population outside the qubit subspace")]
    Leakage { weight: f64 },

    #[error("not a density matrix: {reason}")]
    NotADensityMatrix { reason: String },

    #[error("argument {z} outside the domain of the principal Lambert W branch")]
    Domain { z: f64 },

    #[error("no sign change of the threshold residual on [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
