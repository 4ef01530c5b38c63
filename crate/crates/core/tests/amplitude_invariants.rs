//! Property tests for amplitude frames and slashed-momentum algebra.

mod common;

use dkp_core::algebra::{RepKind, Representation};
use dkp_core::kinematics::FourVector;
use dkp_core::states::{slashed, AmplitudeFrame, Branch};
use dkp_core::CMatrix;
use proptest::prelude::*;

fn rep_kind() -> impl Strategy<Value = RepKind> {
    prop_oneof![
        Just(RepKind::Spin0),
        Just(RepKind::Spin1),
        Just(RepKind::Dirac)
    ]
}

fn timelike() -> impl Strategy<Value = FourVector> {
    (
        0.5f64..2.4,
        -1.0f64..1.0,
        -1.0f64..1.0,
        -1.0f64..1.0,
        0.0f64..0.99,
        any::<bool>(),
    )
        .prop_map(|(m, x, y, z, frac, negative)| {
            let n = (x * x + y * y + z * z).sqrt().max(1e-3);
            let r = 3.0 * m * frac;
            let sign = if negative { -1.0 } else { 1.0 };
            let energy = sign * (m * m + r * r).sqrt();
            FourVector::new(energy, r * x / n, r * y / n, r * z / n)
        })
}

fn any_momentum() -> impl Strategy<Value = FourVector> {
    (-5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0)
        .prop_map(|(a, b, c, d)| FourVector::new(a, b, c, d))
}

fn branches(kind: RepKind) -> &'static [Branch] {
    if kind.is_dkp() {
        &[Branch::Plus, Branch::Minus, Branch::Zero]
    } else {
        &[Branch::Plus, Branch::Minus]
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frames_are_orthonormal_and_complete(kind in rep_kind(), p in timelike()) {
        let rep = Representation::new(kind);
        let frame = AmplitudeFrame::new(&rep, p).unwrap();
        let dim = rep.dim();

        let mut completeness = CMatrix::zeros((dim, dim));
        for &b in branches(kind) {
            // the form is indefinite: each branch Gram is a signed identity
            let sign = match b {
                Branch::Plus => 1.0,
                Branch::Minus => frame.minus_gram_sign(),
                Branch::Zero => -1.0,
            };
            let gram = frame.dual(b).dot(frame.basis(b)).mapv(|v| v * sign);
            let eye = CMatrix::eye(gram.nrows());
            prop_assert!(max_abs(&(&gram - &eye)) <= 1e-12);
            for &other in branches(kind) {
                if other != b {
                    let cross = frame.dual(b).dot(frame.basis(other));
                    prop_assert!(max_abs(&cross) <= 1e-12);
                }
            }
            completeness = completeness + frame.projector(b);
        }
        let eye = CMatrix::eye(dim);
        prop_assert!(max_abs(&(&completeness - &eye)) <= 1e-12);
    }

    #[test]
    fn branch_columns_satisfy_the_mode_equation(kind in rep_kind(), p in timelike()) {
        let rep = Representation::new(kind);
        let frame = AmplitudeFrame::new(&rep, p).unwrap();
        let s = slashed(&rep, &p);
        for &b in branches(kind) {
            let freq = b.frequency(frame.shell());
            let cols = frame.basis(b);
            let defect = s.dot(cols) - cols.mapv(|v| v * freq);
            prop_assert!(max_abs(&defect) <= 1e-12 * (1.0 + freq.abs()));
        }
    }

    #[test]
    fn decomposition_round_trips(kind in rep_kind(), p in timelike(), seed in any::<u64>()) {
        let rep = Representation::new(kind);
        let frame = AmplitudeFrame::new(&rep, p).unwrap();
        let mut rng = common::rng(seed);
        let a = common::random_complex_vector(&mut rng, rep.dim());
        let coeffs = frame.decompose(a.view()).unwrap();
        let back = frame.reconstruct(&coeffs);
        for (x, y) in a.iter().zip(back.iter()) {
            prop_assert!((x - y).norm() <= 1e-12);
        }
        let quasi = coeffs.quasi_norm(kind);
        let direct = rep.bilinear_form(a.view(), a.view()).unwrap();
        prop_assert!((quasi - direct.re).abs() <= 1e-12 * (1.0 + direct.re.abs()));
        prop_assert!(direct.im.abs() <= 1e-12);
    }

    #[test]
    fn slashed_momentum_satisfies_its_minimal_polynomial(kind in rep_kind(), p in any_momentum()) {
        let rep = Representation::new(kind);
        let s = slashed(&rep, &p);
        let cube = s.dot(&s).dot(&s);
        let scaled = s.mapv(|v| v * dkp_core::kinematics::minkowski_dot(&p, &p));
        let scale = max_abs(&cube).max(max_abs(&scaled)).max(1.0);
        prop_assert!(max_abs(&(&cube - &scaled)) <= 1e-12 * scale);
    }

    #[test]
    fn zero_branch_is_annihilated(p in timelike()) {
        for kind in [RepKind::Spin0, RepKind::Spin1] {
            let rep = Representation::new(kind);
            let frame = AmplitudeFrame::new(&rep, p).unwrap();
            let s = slashed(&rep, &p);
            let z = frame.basis(Branch::Zero);
            let image = s.dot(z);
            prop_assert!(max_abs(&image) <= 1e-12 * (1.0 + frame.mass()));
        }
    }

    #[test]
    fn projectors_are_idempotent_spectral_functions(kind in rep_kind(), p in timelike()) {
        let rep = Representation::new(kind);
        let frame = AmplitudeFrame::new(&rep, p).unwrap();
        for &b in branches(kind) {
            let proj = frame.projector(b);
            let defect = proj.dot(&proj) - &proj;
            prop_assert!(max_abs(&defect) <= 1e-12);
        }
    }
}

#[test]
fn frame_rejects_non_timelike_momenta() {
    let rep = Representation::new(RepKind::Spin1);
    let spacelike = FourVector::new(0.3, 1.0, 0.0, 0.0);
    assert!(AmplitudeFrame::new(&rep, spacelike).is_err());
    let lightlike = FourVector::new(1.0, 1.0, 0.0, 0.0);
    assert!(AmplitudeFrame::new(&rep, lightlike).is_err());
}

#[test]
fn quasi_norm_signature_counts_match() {
    // at rest the bilinear form diagonalizes with known signs per branch
    let mut rng = common::rng(0xA11CE);
    for kind in [RepKind::Spin0, RepKind::Spin1, RepKind::Dirac] {
        let rep = Representation::new(kind);
        for _ in 0..10 {
            let p = common::timelike_momentum(&mut rng);
            let frame = AmplitudeFrame::new(&rep, p).unwrap();
            let u = frame.basis(Branch::Plus);
            let v = frame.basis(Branch::Minus);
            for c in 0..u.ncols() {
                let col = u.column(c).to_owned();
                let form = rep.bilinear_form(col.view(), col.view()).unwrap();
                assert!((form.re - 1.0).abs() < 1e-12, "{kind:?} u sign");
            }
            let expected = frame.minus_gram_sign();
            for c in 0..v.ncols() {
                let col = v.column(c).to_owned();
                let form = rep.bilinear_form(col.view(), col.view()).unwrap();
                assert!((form.re - expected).abs() < 1e-12, "{kind:?} v sign");
            }
        }
    }
}
