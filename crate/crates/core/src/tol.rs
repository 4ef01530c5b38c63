//! Central numerical tolerances.
//!
//! Everything here is a default; operations that accept an explicit `tol`
//! argument treat these as fallbacks so a caller (or the CLI `--tol-scale`
//! flag) can tighten or loosen uniformly.

/// Causal classification: `|p.p| <= CLASSIFICATION_TOL` counts as lightlike.
pub const CLASSIFICATION_TOL: f64 = 1e-12;

/// Algebraic identity checks in floating point (meson algebra, Gram
/// orthonormality, projection idempotence). The exact integer paths must be
/// exactly zero; this bound covers the `f64` mirrors of those checks.
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Grid and spectral comparisons (mode vs. lattice evolution, split-step
/// against per-mode oracles). Looser than `ALGEBRAIC_TOL` because values pass
/// through FFTs and O(N^4) accumulations.
pub const GRID_TOL: f64 = 1e-9;

/// Cross-check of the closed-form propagator against a dense matrix
/// exponential.
pub const MATEXP_CROSSCHECK_TOL: f64 = 1e-11;

/// Relative quasi-norm drift allowed per grid evolution step.
pub const QUASI_NORM_DRIFT_TOL: f64 = 1e-10;

/// `|m dtau|` below which the propagator coefficient functions switch to their
/// series forms; keeps `sin(m t)/m` and `(cos(m t)-1)/m^2` well conditioned
/// through the lightlike manifold.
pub const PROPAGATOR_SERIES_THRESHOLD: f64 = 1e-4;

/// Relative slack when deciding whether two mode four-momenta coincide for
/// volume-pairing expectations. Coincident momenta are normally copies of the
/// same vector, so this only has to absorb rounding from arithmetic done on
/// the way in.
pub const MODE_PAIRING_TOL: f64 = 1e-12;
