//! Simulation and verification toolkit for the parametrized Duffin-Kemmer-Petiau
//! (DKP) wave equation
//!
//! ```text
//!     i beta_mu d^mu psi + i d_tau psi = 0
//! ```
//!
//! where the `beta` matrices satisfy the meson algebra
//! `b_l b_m b_n + b_n b_m b_l = g_mn b_l + g_lm b_n` in the (+,-,-,-) signature
//! and the evolution parameter `tau` is independent of coordinate time `x^0`.
//!
//! The crate provides:
//!
//! * [`algebra`]: exact integer-arithmetic representations of the algebra in
//!   dimensions 5 (spin-0), 10 (spin-1) and 4 (Dirac, for spin-1/2
//!   comparisons);
//! * [`kinematics`]: mass-shell kinematics on the full momentum space,
//!   including spacelike and lightlike momenta;
//! * [`states`]: plane-wave amplitude frames, covariant projections and mode
//!   decompositions;
//! * [`evolution`]: the closed-form propagator `exp(-i slashed(p) dtau)` from
//!   the minimal polynomial `slashed(p)^3 = (p.p) slashed(p)`, free and
//!   split-step grid evolution on periodic 4D lattices, and the causal
//!   support check for the influence function;
//! * [`rotation`]: rotation eigenbases and exchange-phase bookkeeping;
//! * [`multiparticle`]: two-particle tensor states, currents and conserved
//!   pairings;
//! * [`symmetries`]: discrete symmetry maps (C, P, T, TPC) and equation
//!   residuals.
//!
//! With the default `parallel` feature the grid kernels run on rayon; disabling
//! it compiles sequential loops with identical (bit-reproducible) results.

pub mod algebra;
pub mod error;
pub mod evolution;
pub mod kinematics;
pub mod multiparticle;
pub(crate) mod parallel;
pub mod rotation;
pub mod states;
pub mod symmetries;
pub mod tol;

pub use error::{CoreError, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Complex matrix used for representation and propagator algebra.
pub type CMatrix = ndarray::Array2<num_complex::Complex64>;

/// Complex vector (spinor) type.
pub type CVector = ndarray::Array1<num_complex::Complex64>;
