//! Two-particle states assembled from plane-wave modes.
//!
//! A state is a finite sum of factorized terms `w * left(x) ⊗ right(y)`, each
//! factor a single-particle [`ModeWavefunction`] sharing one representation.
//! Exchange structure lives entirely in the weights and in the order of the
//! factors, so symmetrization, swap residuals, and the angle-dependent
//! exchange construction of Jabs (Found. Phys. 40, 776, 2010) are all exact
//! term rewrites. Observables contract each tensor slot separately; nothing
//! here materializes a `d^2 x d^2` matrix.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use crate::algebra::{RepKind, Representation};
use crate::error::{CoreError, Result};
use crate::kinematics::FourVector;
use crate::rotation::{exchange_phase, spin_generator};
use crate::states::{slashed, ModeWavefunction};
use crate::tol::MODE_PAIRING_TOL;
use crate::{C64, CMatrix, CVector};

/// Which tensor factor of a two-particle state an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Left,
    Right,
}

/// One product term `weight * left(x) ⊗ right(y)`.
#[derive(Clone, Debug)]
pub struct ProductTerm {
    pub weight: C64,
    pub left: ModeWavefunction,
    pub right: ModeWavefunction,
}

impl ProductTerm {
    pub fn new(weight: C64, left: ModeWavefunction, right: ModeWavefunction) -> Self {
        Self { weight, left, right }
    }

    /// Combined phase frequency of the product, `w_left + w_right`.
    fn frequency(&self) -> f64 {
        self.left.frequency() + self.right.frequency()
    }

    fn factor(&self, slot: Slot) -> &ModeWavefunction {
        match slot {
            Slot::Left => &self.left,
            Slot::Right => &self.right,
        }
    }

    fn spectator(&self, slot: Slot) -> &ModeWavefunction {
        match slot {
            Slot::Left => &self.right,
            Slot::Right => &self.left,
        }
    }
}

/// Superposition of factorized two-particle plane-wave terms.
#[derive(Clone, Debug)]
pub struct TwoParticleState {
    rep: Representation,
    terms: Vec<ProductTerm>,
}

/// True when two four-momenta coincide up to rounding slack. Volume pairing
/// treats distinct momenta as orthogonal, mirroring the delta functions an
/// infinite-volume overlap integral would produce.
fn same_momentum(a: &FourVector, b: &FourVector) -> bool {
    (0..4).all(|k| (a[k] - b[k]).abs() <= MODE_PAIRING_TOL * (1.0 + a[k].abs().max(b[k].abs())))
}

fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let n = b.len();
    let mut out = CVector::zeros(a.len() * n);
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i * n + j] = ai * bj;
        }
    }
    out
}

/// Deterministic spread of sample points in the box `[-2, 2]^4 x [-2, 2]^4`,
/// used for cancellation probes. A lattice rule keeps the points reproducible
/// without threading an RNG through the library.
pub fn probe_points(n: usize) -> Vec<(FourVector, FourVector)> {
    const ALPHA: [f64; 4] = [
        0.618_033_988_749_894_9,
        0.754_877_666_246_693,
        0.569_840_290_998_053_3,
        0.822_875_655_532_364_3,
    ];
    (1..=n)
        .map(|i| {
            let t = i as f64;
            let c = |k: usize, shift: f64| 4.0 * (((t + shift) * ALPHA[k]).fract() - 0.5);
            (
                FourVector::new(c(0, 0.0), c(1, 0.0), c(2, 0.0), c(3, 0.0)),
                FourVector::new(c(0, 0.37), c(1, 0.37), c(2, 0.37), c(3, 0.37)),
            )
        })
        .collect()
}

impl TwoParticleState {
    pub fn new(kind: RepKind, terms: Vec<ProductTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(CoreError::NullState);
        }
        let rep = Representation::new(kind);
        for t in &terms {
            for amp in [t.left.amplitude(), t.right.amplitude()] {
                if amp.len() != rep.dim() {
                    return Err(CoreError::DimensionMismatch {
                        expected: rep.dim(),
                        got: amp.len(),
                    });
                }
            }
        }
        Ok(Self { rep, terms })
    }

    /// Two-term exchange state `N e^{i(k kappa + l xi)} (zeta ⊗ phi +
    /// e^{2 pi i l} phi ⊗ zeta)` following Jabs's prescription: each
    /// single-particle factor carries a spin label along its momentum, the
    /// pair of azimuths `(kappa, xi)` fixes the rotation connecting the two
    /// orderings, and the relative weight is the exchange phase of the label.
    /// Requires `0 <= xi < kappa <= 2 pi` so the connecting rotation is
    /// single-valued.
    pub fn exchange_pair(
        kind: RepKind,
        zeta: ModeWavefunction,
        zeta_label: f64,
        phi: ModeWavefunction,
        phi_label: f64,
        kappa: f64,
        xi: f64,
    ) -> Result<Self> {
        if !(0.0 <= xi && xi < kappa && kappa <= TAU) {
            return Err(CoreError::BadAngles { kappa, xi });
        }
        for label in [zeta_label, phi_label] {
            if !kind.rotation_labels().iter().any(|l| (l - label).abs() <= 1e-12) {
                return Err(CoreError::UnsupportedLabel {
                    kind,
                    label,
                    allowed: match kind {
                        RepKind::Spin0 | RepKind::Spin1 => "-1, 0, +1",
                        RepKind::Dirac => "-1/2, +1/2",
                    },
                });
            }
        }
        let direct = C64::from_polar(FRAC_1_SQRT_2, zeta_label * kappa + phi_label * xi);
        let swapped = direct * exchange_phase(phi_label);
        Self::new(
            kind,
            vec![
                ProductTerm::new(direct, zeta.clone(), phi.clone()),
                ProductTerm::new(swapped, phi, zeta),
            ],
        )
    }

    pub fn kind(&self) -> RepKind {
        self.rep.kind()
    }

    pub fn terms(&self) -> &[ProductTerm] {
        &self.terms
    }

    /// Dimension of the product space, `dim^2` of the representation.
    pub fn dim(&self) -> usize {
        self.rep.dim() * self.rep.dim()
    }

    /// Value of the state at `(x, y, tau)` as a `dim^2` vector, left factor
    /// slowest.
    pub fn evaluate(&self, x: &FourVector, y: &FourVector, tau: f64) -> CVector {
        let mut out = CVector::zeros(self.dim());
        for t in &self.terms {
            let lv = t.left.evaluate(x, tau);
            let rv = t.right.evaluate(y, tau);
            out = out + kron_vec(&lv, &rv).mapv(|v| v * t.weight);
        }
        out
    }

    /// The state with the two factors of every term exchanged; evaluating it
    /// at `(x, y)` gives the slot-swapped value of `self` at `(y, x)`.
    pub fn swapped(&self) -> Self {
        Self {
            rep: self.rep.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| ProductTerm::new(t.weight, t.right.clone(), t.left.clone()))
                .collect(),
        }
    }

    /// All modes advanced by `dtau`; weights are untouched.
    pub fn evolved(&self, dtau: f64) -> Self {
        Self {
            rep: self.rep.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| ProductTerm::new(t.weight, t.left.evolved(dtau), t.right.evolved(dtau)))
                .collect(),
        }
    }

    /// `(self + phase * swapped) / 2`. Fails with [`CoreError::NullState`]
    /// when the combination cancels identically, e.g. antisymmetrizing a
    /// product of equal modes.
    pub fn exchange_projected(&self, phase: C64) -> Result<Self> {
        let half = C64::new(0.5, 0.0);
        let mut terms: Vec<ProductTerm> = self
            .terms
            .iter()
            .map(|t| ProductTerm::new(half * t.weight, t.left.clone(), t.right.clone()))
            .collect();
        terms.extend(
            self.terms
                .iter()
                .map(|t| ProductTerm::new(half * phase * t.weight, t.right.clone(), t.left.clone())),
        );
        let combined = Self { rep: self.rep.clone(), terms };
        let points = probe_points(6);
        let scale = self.sup_at(&points);
        if combined.sup_at(&points) <= 1e-12 * scale {
            return Err(CoreError::NullState);
        }
        Ok(combined)
    }

    pub fn symmetrized(&self) -> Result<Self> {
        self.exchange_projected(C64::new(1.0, 0.0))
    }

    pub fn antisymmetrized(&self) -> Result<Self> {
        self.exchange_projected(C64::new(-1.0, 0.0))
    }

    fn sup_at(&self, points: &[(FourVector, FourVector)]) -> f64 {
        let mut sup = 0.0_f64;
        for (x, y) in points {
            for v in self.evaluate(x, y, 0.0).iter() {
                sup = sup.max(v.norm());
            }
        }
        sup
    }

    /// Sup over `points` of `|psi(x,y) - phase * psi_swapped(x,y)|`, relative
    /// to the sup of `|psi|` on the same points. Zero (to rounding) exactly
    /// when the state picks up `phase` under particle exchange.
    pub fn exchange_residual(
        &self,
        phase: C64,
        points: &[(FourVector, FourVector)],
        tau: f64,
    ) -> f64 {
        let swapped = self.swapped();
        let mut num = 0.0_f64;
        let mut den = 0.0_f64;
        for (x, y) in points {
            let a = self.evaluate(x, y, tau);
            let b = swapped.evaluate(x, y, tau);
            for (av, bv) in a.iter().zip(b.iter()) {
                num = num.max((av - phase * bv).norm());
                den = den.max(av.norm());
            }
        }
        if den > 0.0 {
            num / den
        } else {
            num
        }
    }

    /// `bra^dag eta0 ket` on one slot.
    fn eta_pair(&self, bra: &CVector, ket: &CVector) -> C64 {
        let w = self.rep.eta0().dot(ket);
        bra.iter().zip(w.iter()).map(|(b, k)| b.conj() * k).sum()
    }

    /// `bra^dag eta0 m ket` on one slot.
    fn eta_matrix_pair(&self, bra: &CVector, m: &CMatrix, ket: &CVector) -> C64 {
        let w = self.rep.eta0().dot(&m.dot(ket));
        bra.iter().zip(w.iter()).map(|(b, k)| b.conj() * k).sum()
    }

    /// Quasi-density `Psi^dag (eta0 ⊗ eta0) Psi`; real up to rounding, not
    /// sign definite.
    pub fn density(&self, x: &FourVector, y: &FourVector, tau: f64) -> C64 {
        let lv: Vec<CVector> = self.terms.iter().map(|t| t.left.evaluate(x, tau)).collect();
        let rv: Vec<CVector> = self.terms.iter().map(|t| t.right.evaluate(y, tau)).collect();
        let mut acc = C64::new(0.0, 0.0);
        for (i, ti) in self.terms.iter().enumerate() {
            for (j, tj) in self.terms.iter().enumerate() {
                acc += ti.weight.conj()
                    * tj.weight
                    * self.eta_pair(&lv[i], &lv[j])
                    * self.eta_pair(&rv[i], &rv[j]);
            }
        }
        acc
    }

    /// Pointwise current `Psi^dag (eta0 beta_mu ⊗ eta0) Psi` (slot `Left`) or
    /// `Psi^dag (eta0 ⊗ eta0 beta_mu) Psi` (slot `Right`). Hermitian insertion,
    /// so real up to rounding. `mu` is a spacetime index below 4.
    pub fn current(&self, slot: Slot, mu: usize, x: &FourVector, y: &FourVector, tau: f64) -> C64 {
        let beta = self.rep.beta(mu);
        let lv: Vec<CVector> = self.terms.iter().map(|t| t.left.evaluate(x, tau)).collect();
        let rv: Vec<CVector> = self.terms.iter().map(|t| t.right.evaluate(y, tau)).collect();
        let mut acc = C64::new(0.0, 0.0);
        for (i, ti) in self.terms.iter().enumerate() {
            for (j, tj) in self.terms.iter().enumerate() {
                let slots = match slot {
                    Slot::Left => {
                        self.eta_matrix_pair(&lv[i], beta, &lv[j]) * self.eta_pair(&rv[i], &rv[j])
                    }
                    Slot::Right => {
                        self.eta_pair(&lv[i], &lv[j]) * self.eta_matrix_pair(&rv[i], beta, &rv[j])
                    }
                };
                acc += ti.weight.conj() * tj.weight * slots;
            }
        }
        acc
    }

    /// Relative residual of the continuity law
    /// `d_mu j_x^mu + d_nu j_y^nu + d_tau rho = 0` at one point.
    ///
    /// Every term is a plane wave, so each derivative is an exact algebraic
    /// factor: the x-divergence contracts a slashed momentum difference into
    /// the left slot, likewise for y, and the tau derivative brings down the
    /// frequency difference. The three sums cancel pair by pair because every
    /// amplitude is an eigenvector of its own slashed momentum; what is
    /// returned is the cancellation defect relative to the summed magnitudes.
    pub fn conservation_residual(&self, x: &FourVector, y: &FourVector, tau: f64) -> f64 {
        let lv: Vec<CVector> = self.terms.iter().map(|t| t.left.evaluate(x, tau)).collect();
        let rv: Vec<CVector> = self.terms.iter().map(|t| t.right.evaluate(y, tau)).collect();
        let mut total = C64::new(0.0, 0.0);
        let mut scale = 0.0_f64;
        for (i, ti) in self.terms.iter().enumerate() {
            for (j, tj) in self.terms.iter().enumerate() {
                let ww = ti.weight.conj() * tj.weight;
                let lp = self.eta_pair(&lv[i], &lv[j]);
                let rp = self.eta_pair(&rv[i], &rv[j]);
                let dp = tj.left.momentum().sub(ti.left.momentum());
                let dq = tj.right.momentum().sub(ti.right.momentum());
                let sx = self.eta_matrix_pair(&lv[i], &slashed(&self.rep, &dp), &lv[j]) * rp;
                let sy = lp * self.eta_matrix_pair(&rv[i], &slashed(&self.rep, &dq), &rv[j]);
                let st = -(tj.frequency() - ti.frequency()) * lp * rp;
                total += C64::i() * ww * (sx + sy + st);
                scale += ww.norm() * (sx.norm() + sy.norm() + st.norm());
            }
        }
        // Floor the denominator with the size the pieces could have had, so
        // a state whose cross overlaps all vanish reads as conserved instead
        // of dividing rounding noise by itself.
        let amplitude: f64 = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t.weight.norm()
                    * lv[i].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
                    * rv[i].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
            })
            .sum();
        let momentum_scale = self
            .terms
            .iter()
            .map(|t| {
                t.frequency().abs()
                    + (0..4).map(|mu| t.left.momentum()[mu].abs()).sum::<f64>()
                    + (0..4).map(|mu| t.right.momentum()[mu].abs()).sum::<f64>()
            })
            .fold(0.0_f64, f64::max);
        let floor = amplitude * amplitude * momentum_scale;
        let den = scale.max(floor);
        if den > 0.0 {
            total.norm() / den
        } else {
            0.0
        }
    }

    /// Current in the observed slot at `x` with the other slot traced out by
    /// volume pairing: cross terms whose spectator momenta differ drop, as
    /// they would under a spatial integral over the spectator coordinate.
    pub fn marginal_current(&self, slot: Slot, mu: usize, x: &FourVector, tau: f64) -> C64 {
        let beta = self.rep.beta(mu);
        let ov: Vec<CVector> = self
            .terms
            .iter()
            .map(|t| t.factor(slot).evaluate(x, tau))
            .collect();
        let mut acc = C64::new(0.0, 0.0);
        for (i, ti) in self.terms.iter().enumerate() {
            for (j, tj) in self.terms.iter().enumerate() {
                let (si, sj) = (ti.spectator(slot), tj.spectator(slot));
                if !same_momentum(si.momentum(), sj.momentum()) {
                    continue;
                }
                let spectator_phase = C64::from_polar(1.0, (si.frequency() - sj.frequency()) * tau);
                acc += ti.weight.conj()
                    * tj.weight
                    * self.eta_matrix_pair(&ov[i], beta, &ov[j])
                    * spectator_phase
                    * self.eta_pair(si.amplitude(), sj.amplitude());
            }
        }
        acc
    }

    /// Volume-paired expectation of the slot momentum operator, one value per
    /// spacetime component. Terms pair only when both slots carry coinciding
    /// momenta; the surviving spatial phases cancel exactly and only the tau
    /// phases remain. Cross-branch pairs at equal momenta are killed by the
    /// eta0 orthogonality of the amplitude frames, which is what makes the
    /// result tau-independent.
    pub fn momentum_expectation(&self, slot: Slot, tau: f64) -> [C64; 4] {
        let mut out = [C64::new(0.0, 0.0); 4];
        for ti in &self.terms {
            for tj in &self.terms {
                if !same_momentum(ti.left.momentum(), tj.left.momentum())
                    || !same_momentum(ti.right.momentum(), tj.right.momentum())
                {
                    continue;
                }
                let ww = ti.weight.conj()
                    * tj.weight
                    * C64::from_polar(1.0, (ti.frequency() - tj.frequency()) * tau);
                let overlap = ww
                    * self.eta_pair(ti.left.amplitude(), tj.left.amplitude())
                    * self.eta_pair(ti.right.amplitude(), tj.right.amplitude());
                let p = tj.factor(slot).momentum();
                for (mu, slot_value) in out.iter_mut().enumerate() {
                    *slot_value += overlap * p[mu];
                }
            }
        }
        out
    }

    /// Volume-paired expectation of the spin generator about `axis` acting on
    /// one slot. Unlike [`Self::momentum_expectation`] the insertion mixes
    /// branches at equal momentum, so the value is tau-independent only for
    /// branch-pure states.
    pub fn spin_expectation(&self, slot: Slot, axis: &[f64; 3], tau: f64) -> Result<C64> {
        let generator = spin_generator(&self.rep, axis)?;
        let mut acc = C64::new(0.0, 0.0);
        for ti in &self.terms {
            for tj in &self.terms {
                if !same_momentum(ti.left.momentum(), tj.left.momentum())
                    || !same_momentum(ti.right.momentum(), tj.right.momentum())
                {
                    continue;
                }
                let ww = ti.weight.conj()
                    * tj.weight
                    * C64::from_polar(1.0, (ti.frequency() - tj.frequency()) * tau);
                acc += ww
                    * self.eta_matrix_pair(
                        ti.factor(slot).amplitude(),
                        &generator,
                        tj.factor(slot).amplitude(),
                    )
                    * self.eta_pair(ti.spectator(slot).amplitude(), tj.spectator(slot).amplitude());
            }
        }
        Ok(acc)
    }
}
