use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported matrix dimension {0} (only 2 and 4 are supported)")]
    UnsupportedDimension(usize),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("NotHermitian: max |a_ij - conj(a_ji)| = {asymmetry:e} exceeds {tolerance:e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("NotUnitTrace: trace = {trace} (|trace - 1| must be <= {tolerance:e})")]
    NotUnitTrace { trace: f64, tolerance: f64 },

    #[error("NotPositive: min eigenvalue {min_eigenvalue:e} below -{tolerance:e}")]
    NotPositive { min_eigenvalue: f64, tolerance: f64 },

    #[error("NotPsd: min eigenvalue {min_eigenvalue:e} below -{tolerance:e}")]
    NotPsd { min_eigenvalue: f64, tolerance: f64 },

    #[error("state vector not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("ZeroWeight: operation annihilates the state (weight {weight:e})")]
    ZeroWeight { weight: f64 },

    #[error("NotTState: local Bloch vectors are nonzero (|r| = {r_norm:e}, |s| = {s_norm:e})")]
    NotTState { r_norm: f64, s_norm: f64 },

    #[error("NotInseparable: partial transpose min eigenvalue {min_eigenvalue:e} is not below the threshold")]
    NotInseparable { min_eigenvalue: f64 },

    #[error("FilterTooLarge: spectral norm {norm} exceeds 1")]
    FilterTooLarge { norm: f64 },

    #[error("FidelityTooLow: singlet fraction {fidelity} must exceed 1/2")]
    FidelityTooLow { fidelity: f64 },

    #[error("NotDistillable: state is separable (partial transpose min eigenvalue {min_eigenvalue:e})")]
    NotDistillable { min_eigenvalue: f64 },

    #[error("TargetUnreachable: fidelity {fidelity} after {steps} steps is below target {target}")]
    TargetUnreachable {
        steps: usize,
        fidelity: f64,
        target: f64,
    },

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that describe a malformed or unphysical input state.
    pub fn is_invalid_state(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. }
                | Error::NotUnitTrace { .. }
                | Error::NotPositive { .. }
                | Error::NonFinite
                | Error::DimensionMismatch { .. }
                | Error::UnsupportedDimension(_)
                | Error::Parse(_)
        )
    }
}
