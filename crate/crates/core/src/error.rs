use crate::algebra::RepKind;

/// Errors shared across the library.
#[derive(Debug, thiserror::Error)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("momentum is not timelike (p.p = {p_dot_p:.6e}); amplitudes and mode branches need p.p > tol")]
    NotTimelike { p_dot_p: f64 },

    #[error("timelike momentum with p0 = 0 has no energy sign")]
    AmbiguousSign,

    #[error("operation requires a DKP representation, got {kind:?}")]
    UnsupportedRep { kind: RepKind },

    #[error("Lorentz index out of range: ({mu}, {nu})")]
    BadIndices { mu: usize, nu: usize },

    #[error("axis must be a unit vector (|s| = {norm:.6e})")]
    NotUnit { norm: f64 },

    #[error("spin label {label} is not supported for {kind:?}; allowed: {allowed}")]
    UnsupportedLabel {
        kind: RepKind,
        label: f64,
        allowed: &'static str,
    },

    #[error("frame angles must satisfy 0 <= xi < kappa <= 2*pi (kappa = {kappa}, xi = {xi})")]
    BadAngles { kappa: f64, xi: f64 },

    #[error("grid shapes differ: {a:?} vs {b:?}")]
    GridMismatch { a: [usize; 4], b: [usize; 4] },

    #[error("representation kinds differ: {a:?} vs {b:?}")]
    RepMismatch { a: RepKind, b: RepKind },

    #[error("antisymmetrizing a state with itself yields the null state")]
    NullState,

    #[error("mode momentum {p:?} does not sit on the box lattice (axis {axis})")]
    IncommensurateModes { p: [f64; 4], axis: usize },

    #[error("light cone (inflated by {inflated:.3}) does not fit in the box; max radius {reach:.3} vs available {available:.3}")]
    ConeExceedsBox {
        reach: f64,
        available: f64,
        inflated: f64,
    },

    #[error("invalid grid: {reason}")]
    BadGrid { reason: String },

    #[error("invalid state: {reason}")]
    BadState { reason: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;
