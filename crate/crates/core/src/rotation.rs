//! Spatial rotations about a fixed axis and their spin content.
//!
//! The generator about a unit axis `s` is assembled from the Lorentz
//! generators of the representation:
//!
//! ```text
//!     DKP kinds:   M(s) = i (s1 [b2,b3] + s2 [b3,b1] + s3 [b1,b2])
//!     Dirac:       M(s) = i (s1 [g2,g3] + s2 [g3,g1] + s3 [g1,g2]) / 4
//! ```
//!
//! so that the eigenvalues of `M` are exactly the spin labels hosted by the
//! kind: `{-1, 0, +1}` for the tensor representations and `{-1/2, +1/2}` for
//! the spinor one. The rotation operator is `O(s, theta) = exp(i theta M)`,
//! evaluated in closed form (`M^3 = M` for DKP, `M^2 = 1/4` for Dirac).
//! A full turn gives the identity on the tensor kinds and `-1` on spinors.
//!
//! On each 3-vector block of a DKP spinor `M` acts as `v -> i s x v`, whose
//! unit eigenvectors are `v_0 = s` and `v_{+-1} = (t +- i u) / sqrt(2)` with
//! `t` perpendicular to `s` and `u = s x t`. For `s = z^hat` this makes
//! `v_{+1} = (1, i, 0)/sqrt(2)` the label +1 vector.

use ndarray::Array2;

use crate::algebra::{RepKind, Representation};
use crate::error::{CoreError, Result};
use crate::{C64, CMatrix, CVector};

const UNIT_AXIS_TOL: f64 = 1e-9;

fn check_axis(axis: &[f64; 3]) -> Result<()> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if (norm - 1.0).abs() > UNIT_AXIS_TOL {
        return Err(CoreError::NotUnit { norm });
    }
    Ok(())
}

/// Spin generator `M(s)`; eigenvalues are the labels of the kind.
pub fn spin_generator(rep: &Representation, axis: &[f64; 3]) -> Result<CMatrix> {
    check_axis(axis)?;
    let pairs = [(2usize, 3usize), (3, 1), (1, 2)];
    let mut m: CMatrix = Array2::zeros((rep.dim(), rep.dim()));
    for (l, (j, k)) in pairs.iter().enumerate() {
        let comm = &rep.beta(*j).dot(rep.beta(*k)) - &rep.beta(*k).dot(rep.beta(*j));
        m = m + comm.mapv(|z| z * C64::new(0.0, axis[l]));
    }
    if !rep.kind().is_dkp() {
        m = m.mapv(|z| z / 4.0);
    }
    Ok(m)
}

/// Rotation operator `O(s, theta) = exp(i theta M(s))`, closed form.
pub fn rotation_operator(rep: &Representation, axis: &[f64; 3], theta: f64) -> Result<CMatrix> {
    let m = spin_generator(rep, axis)?;
    let id: CMatrix = Array2::eye(rep.dim());
    if rep.kind().is_dkp() {
        // M^3 = M: exp(i t M) = 1 + i sin(t) M + (cos(t) - 1) M^2
        let msq = m.dot(&m);
        Ok(&(&id + &m.mapv(|z| z * C64::new(0.0, theta.sin())))
            + &msq.mapv(|z| z * (theta.cos() - 1.0)))
    } else {
        // M^2 = 1/4: exp(i t M) = cos(t/2) + 2 i sin(t/2) M
        let half = theta / 2.0;
        Ok(&id.mapv(|z| z * half.cos()) + &m.mapv(|z| z * C64::new(0.0, 2.0 * half.sin())))
    }
}

/// Unit 3-vectors diagonalizing `v -> i s x v`, returned as
/// `(v_minus, v_zero, v_plus)` for labels -1, 0, +1. The transverse seed `t`
/// is built from the coordinate axis least aligned with `s`, so the triple is
/// deterministic in the axis components.
pub fn polarization_triple(axis: &[f64; 3]) -> Result<(CVector, CVector, CVector)> {
    check_axis(axis)?;
    let s = *axis;
    let k = (0..3)
        .min_by(|&a, &b| s[a].abs().partial_cmp(&s[b].abs()).unwrap())
        .unwrap();
    let mut t = [0.0; 3];
    t[k] = 1.0;
    let proj = t[0] * s[0] + t[1] * s[1] + t[2] * s[2];
    for i in 0..3 {
        t[i] -= proj * s[i];
    }
    let tn = (t[0] * t[0] + t[1] * t[1] + t[2] * t[2]).sqrt();
    for v in t.iter_mut() {
        *v /= tn;
    }
    let u = [
        s[1] * t[2] - s[2] * t[1],
        s[2] * t[0] - s[0] * t[2],
        s[0] * t[1] - s[1] * t[0],
    ];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let v_zero: CVector = s.iter().map(|&x| C64::new(x, 0.0)).collect();
    let v_minus: CVector = (0..3).map(|i| C64::new(t[i] * r, -u[i] * r)).collect();
    let v_plus: CVector = (0..3).map(|i| C64::new(t[i] * r, u[i] * r)).collect();
    Ok((v_minus, v_zero, v_plus))
}

/// Eigenbasis of the rotation group about `axis`: unitary columns `X` with
/// real labels `l`, satisfying `O(s, theta) X = X diag(exp(i l theta))`.
#[derive(Clone, Debug)]
pub struct RotationEigenbasis {
    pub basis: CMatrix,
    pub labels: Vec<f64>,
}

pub fn rotation_eigenbasis(kind: RepKind, axis: &[f64; 3]) -> Result<RotationEigenbasis> {
    let (vm, v0, vp) = polarization_triple(axis)?;
    let dim = kind.dim();
    let mut x: CMatrix = Array2::zeros((dim, dim));
    let labels: Vec<f64>;
    match kind {
        RepKind::Spin1 => {
            // blocks: scalar row 0, then three 3-vector blocks
            labels = vec![0.0, 0.0, 0.0, 0.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0];
            x[[0, 0]] = C64::new(1.0, 0.0);
            for blk in 0..3 {
                for r in 0..3 {
                    x[[1 + 3 * blk + r, 1 + blk]] = v0[r];
                    x[[1 + 3 * blk + r, 4 + blk]] = vm[r];
                    x[[1 + 3 * blk + r, 7 + blk]] = vp[r];
                }
            }
        }
        RepKind::Spin0 => {
            // scalar rows 0 and 4, one 3-vector block in between
            labels = vec![0.0, 0.0, 0.0, -1.0, 1.0];
            x[[0, 0]] = C64::new(1.0, 0.0);
            x[[4, 2]] = C64::new(1.0, 0.0);
            for r in 0..3 {
                x[[1 + r, 1]] = v0[r];
                x[[1 + r, 3]] = vm[r];
                x[[1 + r, 4]] = vp[r];
            }
        }
        RepKind::Dirac => {
            labels = vec![-0.5, -0.5, 0.5, 0.5];
            let (chi_minus, chi_plus) = pauli_eigenvectors(axis);
            for r in 0..2 {
                x[[r, 0]] = chi_minus[r];
                x[[2 + r, 1]] = chi_minus[r];
                x[[r, 2]] = chi_plus[r];
                x[[2 + r, 3]] = chi_plus[r];
            }
        }
    }
    Ok(RotationEigenbasis { basis: x, labels })
}

/// Unit eigenvectors of `sigma . s` for eigenvalues -1 and +1, taken from the
/// better-conditioned column of the spectral projector and phase-fixed so the
/// largest component is real positive.
fn pauli_eigenvectors(axis: &[f64; 3]) -> ([C64; 2], [C64; 2]) {
    let s = *axis;
    let build = |sign: f64| -> [C64; 2] {
        // P = (1 + sign sigma.s)/2
        let p = [
            [
                C64::new((1.0 + sign * s[2]) / 2.0, 0.0),
                C64::new(sign * s[0] / 2.0, -sign * s[1] / 2.0),
            ],
            [
                C64::new(sign * s[0] / 2.0, sign * s[1] / 2.0),
                C64::new((1.0 - sign * s[2]) / 2.0, 0.0),
            ],
        ];
        let col = if p[0][0].re >= p[1][1].re { 0 } else { 1 };
        let mut chi = [p[0][col], p[1][col]];
        let norm = (chi[0].norm_sqr() + chi[1].norm_sqr()).sqrt();
        chi[0] /= norm;
        chi[1] /= norm;
        let lead = if chi[0].norm() >= chi[1].norm() {
            chi[0]
        } else {
            chi[1]
        };
        let phase = lead / lead.norm();
        [chi[0] * phase.conj(), chi[1] * phase.conj()]
    };
    (build(-1.0), build(1.0))
}

/// Spectral projector `P(s, l) = 1/2 + 2 l M(s)` of the spinor kind onto the
/// spin label `l = +-1/2`.
pub fn spin_projector(rep: &Representation, axis: &[f64; 3], label: f64) -> Result<CMatrix> {
    if rep.kind() != RepKind::Dirac {
        return Err(CoreError::UnsupportedRep { kind: rep.kind() });
    }
    if label != 0.5 && label != -0.5 {
        return Err(CoreError::UnsupportedLabel {
            kind: rep.kind(),
            label,
            allowed: "-1/2, +1/2",
        });
    }
    let m = spin_generator(rep, axis)?;
    let id: CMatrix = Array2::eye(rep.dim());
    Ok(&id.mapv(|z| z * 0.5) + &m.mapv(|z| z * 2.0 * label))
}

/// Phase picked up when two identical particles of spin label `l` trade
/// places: `exp(2 pi i l)`, +1 for integer labels and -1 for half-integer.
pub fn exchange_phase(label: f64) -> C64 {
    C64::new(0.0, 2.0 * std::f64::consts::PI * label).exp()
}
