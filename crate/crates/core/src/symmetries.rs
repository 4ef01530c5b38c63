//! Discrete transforms on mode superpositions and their grid-level checks.
//!
//! Each map rewrites a superposition term by term into another exact solution
//! of the free mode equation: the charge map pairs momentum negation with
//! complex conjugation, the parity map reflects spatial momenta through
//! `eta0`, the time map reflects the coordinate time, and their composition
//! collapses to a pure reflection of all arguments. The charge map extends to
//! coupled lattice evolution as an anti-unitary identity relating opposite
//! charges, which [`charge_reflection_residual`] measures.
//!
//! The charge and time maps rely on every `beta` matrix being purely
//! imaginary, which holds for the meson representations but not for the
//! Dirac comparison representation; those maps reject `Dirac` input. Parity
//! and the full reflection only use linearity and hold for every
//! representation.

use crate::algebra::{RepKind, Representation};
use crate::error::{CoreError, Result};
use crate::evolution::{Evolver, Grid, GridState, Potential};
use crate::states::{slashed, ModeSuperposition, ModeTerm, ModeWavefunction};
use crate::CVector;

fn require_imaginary_betas(kind: RepKind) -> Result<()> {
    if kind.is_dkp() {
        Ok(())
    } else {
        Err(CoreError::UnsupportedRep { kind })
    }
}

fn map_terms<F>(sup: &ModeSuperposition, f: F) -> Result<ModeSuperposition>
where
    F: Fn(&ModeTerm) -> Result<ModeTerm>,
{
    let terms = sup.terms().iter().map(f).collect::<Result<Vec<_>>>()?;
    ModeSuperposition::new(sup.kind(), terms)
}

/// Charge conjugate: momentum negated, branch flipped, amplitude and weight
/// conjugated. Pointwise, the result at `(x, tau)` equals the conjugate of
/// the original at `(x, -tau)`.
pub fn charge_conjugate(sup: &ModeSuperposition) -> Result<ModeSuperposition> {
    require_imaginary_betas(sup.kind())?;
    map_terms(sup, |t| {
        let mode = ModeWavefunction::new(
            t.mode.momentum().neg(),
            t.mode.branch().flipped(),
            t.mode.amplitude().mapv(|v| v.conj()),
        )?;
        Ok(ModeTerm { weight: t.weight.conj(), mode })
    })
}

/// Parity transform: spatial momentum reflected, branch kept, amplitude
/// multiplied by `eta0`. Pointwise, the result at `(x, tau)` equals `eta0`
/// times the original at the spatially reflected point.
pub fn parity_transform(sup: &ModeSuperposition) -> Result<ModeSuperposition> {
    let rep = Representation::new(sup.kind());
    map_terms(sup, |t| {
        let mode = ModeWavefunction::new(
            t.mode.momentum().spatial_reflected(),
            t.mode.branch(),
            rep.eta0().dot(t.mode.amplitude()),
        )?;
        Ok(ModeTerm { weight: t.weight, mode })
    })
}

/// Time reversal: spatial momentum reflected, branch flipped, amplitude
/// conjugated through `eta0`, weight conjugated. Pointwise, the result at
/// `(x, tau)` equals `eta0` times the conjugate of the original at the
/// time-reflected point.
pub fn time_reverse(sup: &ModeSuperposition) -> Result<ModeSuperposition> {
    require_imaginary_betas(sup.kind())?;
    let rep = Representation::new(sup.kind());
    map_terms(sup, |t| {
        let mode = ModeWavefunction::new(
            t.mode.momentum().spatial_reflected(),
            t.mode.branch().flipped(),
            rep.eta0().dot(&t.mode.amplitude().mapv(|v| v.conj())),
        )?;
        Ok(ModeTerm { weight: t.weight.conj(), mode })
    })
}

/// Composition of the three maps: only the momentum is negated; branch,
/// amplitude, and weight survive unchanged. Pointwise, the result at
/// `(x, tau)` equals the original at `(-x, -tau)`. Unlike the individual
/// charge and time maps this needs no reality structure and is available for
/// every representation.
pub fn full_reflection(sup: &ModeSuperposition) -> Result<ModeSuperposition> {
    map_terms(sup, |t| {
        let mode = ModeWavefunction::new(
            t.mode.momentum().neg(),
            t.mode.branch(),
            t.mode.amplitude().clone(),
        )?;
        Ok(ModeTerm { weight: t.weight, mode })
    })
}

/// Worst relative defect of the mode equation over the terms of a
/// superposition: `||slashed(p) a - w a|| / ||a||`, maximized over terms.
/// Zero (to rounding) certifies that every term is an exact plane-wave
/// solution with its stated frequency.
pub fn solution_residual(sup: &ModeSuperposition) -> f64 {
    let rep = Representation::new(sup.kind());
    let norm = |v: &CVector| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let mut worst = 0.0_f64;
    for t in sup.terms() {
        let a = t.mode.amplitude();
        let defect = slashed(&rep, t.mode.momentum()).dot(a) - a.mapv(|v| v * t.mode.frequency());
        let scale = norm(a);
        if scale > 0.0 {
            worst = worst.max(norm(&defect) / scale);
        }
    }
    worst
}

/// Relative sup distance between the two sides of the charge-reflection
/// identity on the lattice: conjugating a state and evolving it with charge
/// `-q` must match evolving the original backwards with charge `+q` and
/// conjugating afterwards.
///
/// The identity is exact for the split-step map except on Nyquist rows of
/// even-sized axes, where the reflected momentum bin is not representable;
/// feed it band-limited states.
pub fn charge_reflection_residual(
    kind: RepKind,
    grid: Grid,
    charge: f64,
    potential: Option<Potential>,
    state: &GridState,
    dtau: f64,
    steps: usize,
) -> Result<f64> {
    let mut reflected = Evolver::with_coupling(kind, grid, -charge, potential.clone());
    let mut original = Evolver::with_coupling(kind, grid, charge, potential);

    let mut lhs = state.conjugated();
    reflected.run(&mut lhs, dtau, steps)?;

    let mut rhs = state.clone();
    original.run(&mut rhs, -dtau, steps)?;
    let rhs = rhs.conjugated();

    let scale = rhs.sup_norm();
    let dist = lhs.sup_distance(&rhs)?;
    Ok(if scale > 0.0 { dist / scale } else { dist })
}
