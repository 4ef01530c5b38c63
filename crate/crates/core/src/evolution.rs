//! Evolution in the invariant parameter.
//!
//! A spatial-and-time Fourier mode at four-momentum `p` obeys
//! `i d/dtau a = slashed(p) a`, so a tau step is `exp(-i slashed(p) dtau)`.
//! Because `slashed(p)^3 = (p.p) slashed(p)` in every representation handled
//! here, the exponential collapses to three terms:
//!
//! ```text
//!     P(dtau) = 1 - i g1 S + g2 S^2 ,       S = slashed(p)
//!     g1 = sin(m dtau)/m          g2 = (cos(m dtau) - 1)/m^2     (p.p > 0)
//!     g1 = sinh(u dtau)/u         g2 = (cosh(u dtau) - 1)/(p.p)  (p.p < 0)
//! ```
//!
//! with `m = sqrt(p.p)`, `u = sqrt(-p.p)`. The cosine deficits in `g2` are
//! evaluated as half-angle squares (`cos x - 1 = -2 sin^2(x/2)`, and the
//! hyperbolic analogue), which cost no digits at any `x`; for
//! `|p.p| dtau^2 < threshold^2` the coefficients switch to their power series
//! in `z = (p.p) dtau^2`, which converges fast and covers `p.p = 0` exactly.
//! The propagator preserves the indefinite form for every causal class of
//! `p`.
//!
//! Submodules: [`grid`] steps sampled wavefunctions spectrally with an
//! optional minimally coupled external potential, [`lightcone`] evaluates the
//! support structure of the propagation kernel and runs the numerical
//! causality experiment.

pub mod grid;
pub mod lightcone;
pub(crate) mod fft;

pub use grid::{equation_residual, Evolver, Grid, GridState, Potential};
pub use lightcone::{
    causality_experiment, invariant_interval, retarded_kernel, CausalityReport, CausalitySetup,
    ConeRegion, KernelSample,
};

use crate::algebra::Representation;
use crate::kinematics::{minkowski_dot, FourVector};
use crate::states::slashed;
use crate::tol::PROPAGATOR_SERIES_THRESHOLD;
use crate::{C64, CMatrix};

/// Scalar coefficients `(g1, g2)` of the three-term propagator.
pub fn propagator_coefficients(p_dot_p: f64, dtau: f64) -> (f64, f64) {
    let z = p_dot_p * dtau * dtau;
    let thr = PROPAGATOR_SERIES_THRESHOLD * PROPAGATOR_SERIES_THRESHOLD;
    if z.abs() < thr {
        let g1 = dtau * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
        let g2 = dtau * dtau * (-0.5 + z / 24.0 - z * z / 720.0 + z * z * z / 40320.0);
        (g1, g2)
    } else if p_dot_p > 0.0 {
        let m = p_dot_p.sqrt();
        let half = (0.5 * m * dtau).sin();
        ((m * dtau).sin() / m, -2.0 * half * half / p_dot_p)
    } else {
        let u = (-p_dot_p).sqrt();
        let half = (0.5 * u * dtau).sinh();
        ((u * dtau).sinh() / u, 2.0 * half * half / p_dot_p)
    }
}

/// Dense propagator `exp(-i slashed(p) dtau)` at one momentum.
pub fn propagator(rep: &Representation, p: &FourVector, dtau: f64) -> CMatrix {
    let s = slashed(rep, p);
    let (g1, g2) = propagator_coefficients(minkowski_dot(p, p), dtau);
    let mut out = s.dot(&s).mapv(|z| z * g2);
    out = out + s.mapv(|z| z * C64::new(0.0, -g1));
    for d in 0..rep.dim() {
        out[[d, d]] += 1.0;
    }
    out
}

/// `out = slashed(p) input`, allocation free; `out` is overwritten.
pub(crate) fn apply_slashed(rep: &Representation, p: &FourVector, input: &[C64], out: &mut [C64]) {
    let dim = rep.dim();
    for o in out.iter_mut() {
        *o = C64::new(0.0, 0.0);
    }
    for mu in 0..4 {
        let pm = p[mu];
        if pm == 0.0 {
            continue;
        }
        let b = rep.beta(mu);
        for i in 0..dim {
            let mut acc = C64::new(0.0, 0.0);
            for (j, inp) in input.iter().enumerate().take(dim) {
                acc += b[[i, j]] * inp;
            }
            out[i] += acc * pm;
        }
    }
}

/// In-place `chunk <- (1 - i g1 S + g2 S^2) chunk` with scratch vectors.
pub(crate) fn apply_propagator_terms(
    rep: &Representation,
    p: &FourVector,
    g1: f64,
    g2: f64,
    chunk: &mut [C64],
    t1: &mut [C64],
    t2: &mut [C64],
) {
    apply_slashed(rep, p, chunk, t1);
    apply_slashed(rep, p, t1, t2);
    let ig1 = C64::new(0.0, -g1);
    for ((c, a), b) in chunk.iter_mut().zip(t1.iter()).zip(t2.iter()) {
        *c += ig1 * a + g2 * b;
    }
}
