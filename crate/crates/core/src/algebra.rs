//! Representations of the meson algebra
//!
//! ```text
//!     b_l b_m b_n + b_n b_m b_l = g_mn b_l + g_lm b_n ,   g = diag(+1,-1,-1,-1)
//! ```
//!
//! Two DKP representations are built explicitly:
//!
//! * **spin-0**, dimension 5, spinor layout `(u, d^1 u, d^2 u, d^3 u, -m u)`
//!   up to normalization (one scalar degree of freedom);
//! * **spin-1**, dimension 10, spinor layout `(A^0, A^1..A^3, e^1..e^3,
//!   b^1..b^3)` where `e` and `b` are the scaled electric and magnetic fields
//!   of the Proca system.
//!
//! A 4-dimensional Dirac representation (standard Dirac basis) rides along for
//! spin-1/2 comparisons; it satisfies the Clifford algebra, not the meson
//! algebra, and is excluded from the meson checks.
//!
//! Every matrix entry is a Gaussian integer, so the algebra checks run in
//! exact integer arithmetic alongside the `f64` mirrors used by the numerics.

use ndarray::{Array2, ArrayView1};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::{C64, CMatrix};

/// Metric diagonal, (+,-,-,-).
pub const METRIC: [i64; 4] = [1, -1, -1, -1];

type GInt = Complex<i64>;
type GMatrix = Array2<GInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    /// 5-dimensional DKP representation (scalar sector).
    Spin0,
    /// 10-dimensional DKP representation (Proca sector).
    Spin1,
    /// 4-dimensional Dirac comparison representation.
    Dirac,
}

impl RepKind {
    pub fn dim(self) -> usize {
        match self {
            RepKind::Spin0 => 5,
            RepKind::Spin1 => 10,
            RepKind::Dirac => 4,
        }
    }

    /// Columns in the u (and v) amplitude frame.
    pub fn polarization_count(self) -> usize {
        match self {
            RepKind::Spin0 => 1,
            RepKind::Spin1 => 3,
            RepKind::Dirac => 2,
        }
    }

    /// Columns in the tau-independent z frame.
    pub fn zero_mode_count(self) -> usize {
        match self {
            RepKind::Spin0 => 3,
            RepKind::Spin1 => 4,
            RepKind::Dirac => 0,
        }
    }

    /// Whether the kind satisfies the meson algebra (vs. Clifford).
    pub fn is_dkp(self) -> bool {
        !matches!(self, RepKind::Dirac)
    }

    /// Rotation labels hosted by the representation.
    pub fn rotation_labels(self) -> &'static [f64] {
        match self {
            RepKind::Spin0 | RepKind::Spin1 => &[-1.0, 0.0, 1.0],
            RepKind::Dirac => &[-0.5, 0.5],
        }
    }
}

/// Levi-Civita symbol with `eps(1,2,3) = +1` (1-based spatial indices).
pub(crate) fn epsilon(j: usize, k: usize, l: usize) -> i64 {
    let (j, k, l) = (j as i64, k as i64, l as i64);
    (j - k) * (k - l) * (l - j) / 2
}

fn gmat(dim: usize) -> GMatrix {
    Array2::from_elem((dim, dim), GInt::new(0, 0))
}

/// 10-dim beta matrices. Blocks over (A^0 | A | e | b):
/// beta_0 couples A <-> e, beta_j couples A^0 <-> e_j and A <-> b through
/// (U_j)_{kl} = -eps_{jkl}. All entries are +-i.
fn spin1_betas() -> [GMatrix; 4] {
    let i = GInt::new(0, 1);
    let mut b = [gmat(10), gmat(10), gmat(10), gmat(10)];
    for k in 0..3 {
        b[0][[1 + k, 4 + k]] = i;
        b[0][[4 + k, 1 + k]] = -i;
    }
    for j in 0..3 {
        b[1 + j][[0, 4 + j]] = i;
        b[1 + j][[4 + j, 0]] = i;
        for k in 0..3 {
            for l in 0..3 {
                let u = -epsilon(j + 1, k + 1, l + 1);
                b[1 + j][[1 + k, 7 + l]] = i * u;
                b[1 + j][[7 + k, 1 + l]] = -i * u;
            }
        }
    }
    b
}

/// 5-dim beta matrices over (scalar | gradient | mass) blocks.
fn spin0_betas() -> [GMatrix; 4] {
    let i = GInt::new(0, 1);
    let mut b = [gmat(5), gmat(5), gmat(5), gmat(5)];
    b[0][[0, 4]] = -i;
    b[0][[4, 0]] = i;
    for j in 0..3 {
        b[1 + j][[1 + j, 4]] = i;
        b[1 + j][[4, 1 + j]] = i;
    }
    b
}

/// Standard Dirac basis gammas: g0 = diag(1,1,-1,-1), g^j off-diagonal Pauli.
fn dirac_gammas() -> [GMatrix; 4] {
    let one = GInt::new(1, 0);
    let i = GInt::new(0, 1);
    let mut g = [gmat(4), gmat(4), gmat(4), gmat(4)];
    g[0][[0, 0]] = one;
    g[0][[1, 1]] = one;
    g[0][[2, 2]] = -one;
    g[0][[3, 3]] = -one;
    // sigma_x
    g[1][[0, 3]] = one;
    g[1][[1, 2]] = one;
    g[1][[2, 1]] = -one;
    g[1][[3, 0]] = -one;
    // sigma_y
    g[2][[0, 3]] = -i;
    g[2][[1, 2]] = i;
    g[2][[2, 1]] = i;
    g[2][[3, 0]] = -i;
    // sigma_z
    g[3][[0, 2]] = one;
    g[3][[1, 3]] = -one;
    g[3][[2, 0]] = -one;
    g[3][[3, 1]] = one;
    g
}

fn to_f64(m: &GMatrix) -> CMatrix {
    m.mapv(|z| C64::new(z.re as f64, z.im as f64))
}

fn gdot(a: &GMatrix, b: &GMatrix) -> GMatrix {
    let n = a.nrows();
    let mut out = gmat(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = GInt::new(0, 0);
            for t in 0..n {
                s += a[[i, t]] * b[[t, j]];
            }
            out[[i, j]] = s;
        }
    }
    out
}

fn gscale(m: &GMatrix, s: i64) -> GMatrix {
    m.mapv(|z| z * s)
}

fn gmax_abs(m: &GMatrix) -> i64 {
    m.iter().map(|z| z.re.abs().max(z.im.abs())).max().unwrap()
}

/// One representation of the algebra: exact Gaussian-integer matrices plus
/// `f64` mirrors, and the bilinear-form metric `eta0`.
#[derive(Clone, Debug)]
pub struct Representation {
    kind: RepKind,
    betas_exact: [GMatrix; 4],
    eta0_exact: GMatrix,
    betas: [CMatrix; 4],
    eta0: CMatrix,
}

impl Representation {
    pub fn new(kind: RepKind) -> Self {
        let betas_exact = match kind {
            RepKind::Spin0 => spin0_betas(),
            RepKind::Spin1 => spin1_betas(),
            RepKind::Dirac => dirac_gammas(),
        };
        // eta0 = 2 b0^2 - 1 for the DKP kinds; for Dirac the bilinear metric
        // is gamma^0 itself.
        let eta0_exact = if kind.is_dkp() {
            let mut m = gscale(&gdot(&betas_exact[0], &betas_exact[0]), 2);
            for d in 0..kind.dim() {
                m[[d, d]] -= GInt::new(1, 0);
            }
            m
        } else {
            betas_exact[0].clone()
        };
        let betas = [
            to_f64(&betas_exact[0]),
            to_f64(&betas_exact[1]),
            to_f64(&betas_exact[2]),
            to_f64(&betas_exact[3]),
        ];
        let eta0 = to_f64(&eta0_exact);
        Representation {
            kind,
            betas_exact,
            eta0_exact,
            betas,
            eta0,
        }
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    /// `beta_mu` as a complex matrix. Panics on `mu > 3`.
    pub fn beta(&self, mu: usize) -> &CMatrix {
        &self.betas[mu]
    }

    pub fn eta0(&self) -> &CMatrix {
        &self.eta0
    }

    /// Exact meson-algebra residual, `max |lhs - rhs|` over all 64 index
    /// triples in Gaussian-integer arithmetic. Zero iff the algebra holds.
    pub fn meson_residual_exact(&self) -> Result<i64> {
        if !self.kind.is_dkp() {
            return Err(CoreError::UnsupportedRep { kind: self.kind });
        }
        let b = &self.betas_exact;
        let mut worst = 0i64;
        for lam in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let lhs_a = gdot(&gdot(&b[lam], &b[mu]), &b[nu]);
                    let lhs_b = gdot(&gdot(&b[nu], &b[mu]), &b[lam]);
                    let rhs = &gscale(&b[lam], METRIC[mu] * ((mu == nu) as i64))
                        + &gscale(&b[nu], METRIC[lam] * ((lam == mu) as i64));
                    let diff = &(&lhs_a + &lhs_b) - &rhs;
                    worst = worst.max(gmax_abs(&diff));
                }
            }
        }
        Ok(worst)
    }

    /// Floating-point mirror of [`Self::meson_residual_exact`].
    pub fn meson_residual_float(&self) -> Result<f64> {
        if !self.kind.is_dkp() {
            return Err(CoreError::UnsupportedRep { kind: self.kind });
        }
        let b = &self.betas;
        let g: [f64; 4] = [1.0, -1.0, -1.0, -1.0];
        let mut worst = 0.0f64;
        for lam in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let lhs = b[lam].dot(&b[mu]).dot(&b[nu]) + b[nu].dot(&b[mu]).dot(&b[lam]);
                    let rhs = b[lam].mapv(|z| z * g[mu] * ((mu == nu) as i64 as f64))
                        + b[nu].mapv(|z| z * g[lam] * ((lam == mu) as i64 as f64));
                    let diff = &lhs - &rhs;
                    worst = worst.max(max_abs(&diff));
                }
            }
        }
        Ok(worst)
    }

    /// Exact residuals of the eta identities
    /// `eta0 b0 = b0 eta0 = b0`, `eta0 b_j + b_j eta0 = 0`,
    /// `eta0 b_mu = b_mu^dagger eta0`. DKP kinds only.
    pub fn eta_identity_residuals(&self) -> Result<EtaIdentityResiduals> {
        if !self.kind.is_dkp() {
            return Err(CoreError::UnsupportedRep { kind: self.kind });
        }
        let b = &self.betas_exact;
        let eta = &self.eta0_exact;
        let commute0 = {
            let a = &gdot(eta, &b[0]) - &b[0];
            let c = &gdot(&b[0], eta) - &b[0];
            gmax_abs(&a).max(gmax_abs(&c))
        };
        let mut anticommute = 0i64;
        for bj in &b[1..] {
            let s = &gdot(eta, bj) + &gdot(bj, eta);
            anticommute = anticommute.max(gmax_abs(&s));
        }
        let mut conjugation = 0i64;
        for bmu in b {
            let dag = bmu.t().mapv(|z| z.conj());
            let d = &gdot(eta, bmu) - &gdot(&dag, eta);
            conjugation = conjugation.max(gmax_abs(&d));
        }
        Ok(EtaIdentityResiduals {
            commute0,
            anticommute,
            conjugation,
        })
    }

    /// Lorentz generator `r_{mu nu} = 2i [b_mu, b_nu]`. The normalization is
    /// tied to the meson algebra (the Clifford closure carries an extra
    /// factor), so only DKP kinds are accepted.
    pub fn lorentz_generator(&self, mu: usize, nu: usize) -> Result<CMatrix> {
        if !self.kind.is_dkp() {
            return Err(CoreError::UnsupportedRep { kind: self.kind });
        }
        if mu > 3 || nu > 3 {
            return Err(CoreError::BadIndices { mu, nu });
        }
        let c = &self.betas[mu].dot(&self.betas[nu]) - &self.betas[nu].dot(&self.betas[mu]);
        Ok(c.mapv(|z| z * C64::new(0.0, 2.0)))
    }

    /// Max residual of `[b_lam, r_{mu nu}] = 2i (g_lm b_nu - g_ln b_mu)` over
    /// all index triples. Exact zero in integer arithmetic for DKP kinds; the
    /// returned value is the `f64` mirror (also exact for Gaussian entries).
    pub fn generator_commutator_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        let g: [f64; 4] = [1.0, -1.0, -1.0, -1.0];
        for (lam, &g_lam) in g.iter().enumerate() {
            for mu in 0..4 {
                for nu in 0..4 {
                    let r = self.lorentz_generator(mu, nu)?;
                    let lhs = &self.betas[lam].dot(&r) - &r.dot(&self.betas[lam]);
                    let mut rhs = self.betas[nu]
                        .mapv(|z| z * C64::new(0.0, 2.0) * g_lam * ((lam == mu) as i64 as f64));
                    rhs = rhs
                        - self.betas[mu].mapv(|z| {
                            z * C64::new(0.0, 2.0) * g_lam * ((lam == nu) as i64 as f64)
                        });
                    worst = worst.max(max_abs(&(&lhs - &rhs)));
                }
            }
        }
        Ok(worst)
    }

    /// Indefinite bilinear form `psi^bar phi = psi^dagger eta0 phi`.
    pub fn bilinear_form(&self, psi: ArrayView1<C64>, phi: ArrayView1<C64>) -> Result<C64> {
        let dim = self.dim();
        if psi.len() != dim {
            return Err(CoreError::DimensionMismatch {
                expected: dim,
                got: psi.len(),
            });
        }
        if phi.len() != dim {
            return Err(CoreError::DimensionMismatch {
                expected: dim,
                got: phi.len(),
            });
        }
        let mut acc = C64::new(0.0, 0.0);
        for (i, row) in self.eta0.outer_iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.norm_sqr() != 0.0 {
                    acc += psi[i].conj() * e * phi[j];
                }
            }
        }
        Ok(acc)
    }

    /// Eigenvalue multiplicities of `beta_0`, derived from exact traces.
    ///
    /// `b0^3 = b0` pins the spectrum to {0, +1, -1}; `tr b0` and `tr b0^2` are
    /// then linear in the multiplicities. For the Dirac kind `g0^2 = 1` gives
    /// spectrum {+1, -1} and the same trace bookkeeping applies.
    pub fn beta0_multiplicities(&self) -> Beta0Spectrum {
        let b0 = &self.betas_exact[0];
        let tr1: GInt = (0..self.dim()).map(|d| b0[[d, d]]).sum();
        let b0sq = gdot(b0, b0);
        let tr2: GInt = (0..self.dim()).map(|d| b0sq[[d, d]]).sum();
        debug_assert_eq!(tr1.im, 0);
        debug_assert_eq!(tr2.im, 0);
        let plus = (tr2.re + tr1.re) / 2;
        let minus = (tr2.re - tr1.re) / 2;
        Beta0Spectrum {
            plus: plus as usize,
            minus: minus as usize,
            zero: self.dim() - (plus + minus) as usize,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct EtaIdentityResiduals {
    /// `max(|eta b0 - b0|, |b0 eta - b0|)` (exact integer max-abs).
    pub commute0: i64,
    /// `max_j |eta b_j + b_j eta|`.
    pub anticommute: i64,
    /// `max_mu |eta b_mu - b_mu^dagger eta|`.
    pub conjugation: i64,
}

impl EtaIdentityResiduals {
    pub fn all_zero(&self) -> bool {
        self.commute0 == 0 && self.anticommute == 0 && self.conjugation == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Beta0Spectrum {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
