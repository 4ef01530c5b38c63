//! Support structure of tau propagation in position space.
//!
//! The scalar symbols of the mode propagator, interpolated over the
//! spectrum of `slashed(p)`, are entire functions of exponential type, so
//! the position-space kernel of a tau step vanishes where the invariant
//! interval
//!
//! ```text
//!     s = t^2 - tau^2 - r^2
//! ```
//!
//! is negative: after evolving by `tau`, amplitude seeded at the origin can
//! only reach events with `t^2 >= tau^2 + r^2`. Inside that region the
//! kernel's smooth part is `(1 / 4 pi^2) s^{-3/2}`, finite as `r -> 0`; a
//! singular layer lives on `s = 0`.
//!
//! [`causality_experiment`] checks the support statement numerically: a
//! spectral evolution of a Gaussian seed on a time-space box must keep
//! essentially all of its density inside the (slightly inflated) region.

use serde::{Deserialize, Serialize};

use crate::algebra::{RepKind, Representation};
use crate::error::{CoreError, Result};
use crate::evolution::grid::{Evolver, Grid, GridState};
use crate::{C64, CVector};

/// Classification of an event against the propagation cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeRegion {
    Inside,
    OnCone,
    Outside,
}

/// Pointwise kernel evaluation: region flag plus the smooth interior value
/// (zero outside; the on-cone layer is distributional and reported as zero).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct KernelSample {
    pub region: ConeRegion,
    pub value: f64,
}

/// `s = t^2 - tau^2 - r^2`.
pub fn invariant_interval(t: f64, tau: f64, r: f64) -> f64 {
    t * t - tau * tau - r * r
}

/// Smooth part of the propagation kernel at time offset `t`, radius `r`,
/// after parameter step `tau`. Events with `|s| <= tol` are flagged as on
/// the cone.
pub fn retarded_kernel(t: f64, tau: f64, r: f64, tol: f64) -> KernelSample {
    let s = invariant_interval(t, tau, r);
    if s.abs() <= tol {
        KernelSample {
            region: ConeRegion::OnCone,
            value: 0.0,
        }
    } else if s < 0.0 {
        KernelSample {
            region: ConeRegion::Outside,
            value: 0.0,
        }
    } else {
        KernelSample {
            region: ConeRegion::Inside,
            value: s.powf(-1.5) / (4.0 * std::f64::consts::PI * std::f64::consts::PI),
        }
    }
}

/// Configuration of the numerical support check (one time axis, one space
/// axis; the remaining axes are collapsed).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CausalitySetup {
    pub kind: RepKind,
    /// Physical lengths of the time and space axes.
    pub box_lengths: [f64; 2],
    /// Sites per axis.
    pub resolution: usize,
    /// Width of the Gaussian seed at the box center.
    pub sigma: f64,
    /// Total evolution parameter.
    pub tau: f64,
    pub steps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CausalityReport {
    pub resolution: usize,
    /// Fraction of the absolute density outside the inflated support region.
    pub leakage: f64,
    /// Support inflation absorbing the seed width and grid smoothing,
    /// `4 sigma + 2 dx`.
    pub inflation: f64,
    /// Largest spatial radius the support region reaches inside the box.
    pub reach: f64,
}

/// Evolves a Gaussian seed and measures the density fraction that escapes
/// the allowed region `r <= sqrt(max(t^2 - tau^2, 0)) + inflation`.
pub fn causality_experiment(setup: &CausalitySetup) -> Result<CausalityReport> {
    let n = setup.resolution;
    if n < 8 {
        return Err(CoreError::BadGrid {
            reason: format!("causality run needs at least 8 sites per axis, got {n}"),
        });
    }
    let positive = |v: f64| v.is_finite() && v > 0.0;
    if !positive(setup.sigma) || !positive(setup.tau) || setup.steps == 0 {
        return Err(CoreError::BadState {
            reason: "sigma, tau and steps must be positive".into(),
        });
    }
    let [l0, l1] = setup.box_lengths;
    let dx = l1 / n as f64;
    let inflation = 4.0 * setup.sigma + 2.0 * dx;
    let reach = (l0 * l0 / 4.0 - setup.tau * setup.tau).max(0.0).sqrt();
    let available = l1 / 2.0 - inflation;
    if reach > available {
        return Err(CoreError::ConeExceedsBox {
            reach,
            available,
            inflated: inflation,
        });
    }

    let grid = Grid::new([n, n, 1, 1], [l0, l1, 1.0, 1.0])?;
    let kind = setup.kind;
    let dim = kind.dim();
    let spinor: CVector = CVector::from_elem(dim, C64::new(1.0 / (dim as f64).sqrt(), 0.0));
    let two_sigma_sq = 2.0 * setup.sigma * setup.sigma;
    let mut state = GridState::from_fn(grid, kind, move |x| {
        let g = (-(x[0] * x[0] + x[1] * x[1]) / two_sigma_sq).exp();
        spinor.mapv(|z| z * g)
    });

    let mut evolver = Evolver::new(kind, grid);
    evolver.run(&mut state, setup.tau / setup.steps as f64, setup.steps)?;

    let rep = Representation::new(kind);
    let densities = state.bilinear_density(&rep)?;
    let tau = setup.tau;
    let mut held = 0.0;
    let mut escaped = 0.0;
    for (site, d) in densities.iter().enumerate() {
        let idx = grid.unflatten(site);
        let t = grid.coordinate(0, idx[0]);
        let r = grid.coordinate(1, idx[1]).abs();
        let bound = (t * t - tau * tau).max(0.0).sqrt() + inflation;
        if r <= bound {
            held += d.abs();
        } else {
            escaped += d.abs();
        }
    }
    let total = held + escaped;
    if total <= 0.0 {
        return Err(CoreError::BadState {
            reason: "evolved state carries no density".into(),
        });
    }
    Ok(CausalityReport {
        resolution: n,
        leakage: escaped / total,
        inflation,
        reach,
    })
}
