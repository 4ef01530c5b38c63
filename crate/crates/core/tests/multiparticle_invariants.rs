//! Exchange symmetry and conservation for two-particle mode states.
//!
//! The heart of the matter: symmetrized tensor products stay symmetric under
//! free evolution for every representation, the two-term exchange pairs carry
//! exactly the phase their spin label dictates, and the two-point currents
//! close into a conservation law term by term.

mod common;

use dkp_core::algebra::{RepKind, Representation};
use dkp_core::kinematics::FourVector;
use dkp_core::multiparticle::{probe_points, ProductTerm, Slot, TwoParticleState};
use dkp_core::rotation::exchange_phase;
use dkp_core::states::{AmplitudeFrame, Branch, ModeWavefunction};
use dkp_core::{C64, CoreError};
use rand::Rng;

fn random_mode(rng: &mut impl Rng, rep: &Representation) -> ModeWavefunction {
    let kind = rep.kind();
    let p = common::timelike_momentum(rng);
    let frame = AmplitudeFrame::new(rep, p).unwrap();
    let mut choices: Vec<(Branch, usize)> = Vec::new();
    for idx in 0..kind.polarization_count() {
        choices.push((Branch::Plus, idx));
        choices.push((Branch::Minus, idx));
    }
    for idx in 0..kind.zero_mode_count() {
        choices.push((Branch::Zero, idx));
    }
    let (branch, index) = choices[rng.gen_range(0..choices.len())];
    frame.mode(branch, index)
}

fn random_weight(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_state(rng: &mut impl Rng, kind: RepKind, terms: usize) -> TwoParticleState {
    let rep = Representation::new(kind);
    let terms = (0..terms)
        .map(|_| {
            ProductTerm::new(
                random_weight(rng),
                random_mode(rng, &rep),
                random_mode(rng, &rep),
            )
        })
        .collect();
    TwoParticleState::new(kind, terms).unwrap()
}

#[test]
fn symmetrized_states_stay_symmetric_under_free_evolution() {
    let mut rng = common::rng(0x2b_01);
    let points = probe_points(8);
    for kind in [RepKind::Spin0, RepKind::Spin1, RepKind::Dirac] {
        for _ in 0..6 {
            let mut state = random_state(&mut rng, kind, 3).symmetrized().unwrap();
            for _ in 0..5 {
                state = state.evolved(rng.gen_range(-2.0..2.0));
                let residual = state.exchange_residual(C64::new(1.0, 0.0), &points, 0.4);
                assert!(residual <= 1e-12, "{kind:?}: {residual:.3e}");
            }
        }
    }
}

#[test]
fn antisymmetrized_dirac_states_stay_antisymmetric() {
    let mut rng = common::rng(0x2b_02);
    let points = probe_points(8);
    for _ in 0..6 {
        let mut state = random_state(&mut rng, RepKind::Dirac, 3)
            .antisymmetrized()
            .unwrap();
        for _ in 0..5 {
            state = state.evolved(rng.gen_range(-2.0..2.0));
            let residual = state.exchange_residual(C64::new(-1.0, 0.0), &points, 0.4);
            assert!(residual <= 1e-12, "{residual:.3e}");
        }
    }
}

#[test]
fn antisymmetrizing_a_selfproduct_cancels() {
    let mut rng = common::rng(0x2b_03);
    let rep = Representation::new(RepKind::Spin1);
    let mode = random_mode(&mut rng, &rep);
    let state = TwoParticleState::new(
        RepKind::Spin1,
        vec![ProductTerm::new(C64::new(1.0, 0.0), mode.clone(), mode)],
    )
    .unwrap();
    assert!(matches!(
        state.antisymmetrized(),
        Err(CoreError::NullState)
    ));
}

#[test]
fn exchange_pairs_carry_the_phase_of_their_label() {
    let mut rng = common::rng(0x2b_04);
    let points = probe_points(8);
    for kind in [RepKind::Spin0, RepKind::Spin1, RepKind::Dirac] {
        let rep = Representation::new(kind);
        let labels = kind.rotation_labels();
        for _ in 0..8 {
            let zeta = random_mode(&mut rng, &rep);
            let phi = random_mode(&mut rng, &rep);
            let zeta_label = labels[rng.gen_range(0..labels.len())];
            let phi_label = labels[rng.gen_range(0..labels.len())];
            let kappa: f64 = rng.gen_range(1e-3..std::f64::consts::TAU);
            let xi = rng.gen_range(0.0..kappa);
            let state =
                TwoParticleState::exchange_pair(kind, zeta, zeta_label, phi, phi_label, kappa, xi)
                    .unwrap();
            let phase = exchange_phase(phi_label);
            let expected_sign = if kind == RepKind::Dirac { -1.0 } else { 1.0 };
            assert!((phase - C64::new(expected_sign, 0.0)).norm() <= 1e-12);
            for tau in [0.0, 0.9] {
                let residual = state.evolved(tau).exchange_residual(phase, &points, 0.2);
                assert!(residual <= 1e-12, "{kind:?} l={phi_label}: {residual:.3e}");
            }
        }
    }
}

#[test]
fn changing_the_pair_angles_is_a_global_phase() {
    let mut rng = common::rng(0x2b_05);
    let points = probe_points(6);
    let rep = Representation::new(RepKind::Spin1);
    let zeta = random_mode(&mut rng, &rep);
    let phi = random_mode(&mut rng, &rep);
    let (k, l) = (1.0, -1.0);
    let (kappa_a, xi_a) = (2.1, 0.7);
    let (kappa_b, xi_b) = (3.4, 1.9);
    let a = TwoParticleState::exchange_pair(
        RepKind::Spin1,
        zeta.clone(),
        k,
        phi.clone(),
        l,
        kappa_a,
        xi_a,
    )
    .unwrap();
    let b =
        TwoParticleState::exchange_pair(RepKind::Spin1, zeta, k, phi, l, kappa_b, xi_b).unwrap();
    let shift = C64::from_polar(1.0, k * (kappa_b - kappa_a) + l * (xi_b - xi_a));
    let mut num = 0.0_f64;
    let mut den = 0.0_f64;
    for (x, y) in &points {
        let va = a.evaluate(x, y, 0.3);
        let vb = b.evaluate(x, y, 0.3);
        for (ea, eb) in va.iter().zip(vb.iter()) {
            num = num.max((eb - shift * ea).norm());
            den = den.max(ea.norm());
        }
    }
    assert!(num <= 1e-12 * den, "{:.3e}", num / den);
}

#[test]
fn pair_construction_rejects_bad_input() {
    let mut rng = common::rng(0x2b_06);
    let rep = Representation::new(RepKind::Spin1);
    let zeta = random_mode(&mut rng, &rep);
    let phi = random_mode(&mut rng, &rep);
    // angle order violated, kappa out of range, label not in the spectrum
    for (kappa, xi) in [(1.0, 1.5), (1.0, 1.0), (7.0, 0.5), (2.0, -0.1)] {
        assert!(matches!(
            TwoParticleState::exchange_pair(
                RepKind::Spin1,
                zeta.clone(),
                1.0,
                phi.clone(),
                0.0,
                kappa,
                xi
            ),
            Err(CoreError::BadAngles { .. })
        ));
    }
    assert!(matches!(
        TwoParticleState::exchange_pair(
            RepKind::Spin1,
            zeta.clone(),
            0.5,
            phi.clone(),
            0.0,
            2.0,
            0.5
        ),
        Err(CoreError::UnsupportedLabel { .. })
    ));
    let dirac = Representation::new(RepKind::Dirac);
    let dz = random_mode(&mut rng, &dirac);
    let dp = random_mode(&mut rng, &dirac);
    assert!(matches!(
        TwoParticleState::exchange_pair(RepKind::Dirac, dz, 1.0, dp, 0.5, 2.0, 0.5),
        Err(CoreError::UnsupportedLabel { .. })
    ));
}

#[test]
fn the_two_point_conservation_law_holds_termwise() {
    let mut rng = common::rng(0x2b_07);
    let points = probe_points(5);
    for kind in [RepKind::Spin0, RepKind::Spin1, RepKind::Dirac] {
        for trial in 0..4 {
            let state = random_state(&mut rng, kind, 3);
            for (x, y) in &points {
                for tau in [0.0, 1.3] {
                    let residual = state.conservation_residual(x, y, tau);
                    assert!(
                        residual <= 1e-12,
                        "{kind:?} trial {trial}: {residual:.3e}"
                    );
                }
            }
        }
    }
}

#[test]
fn conservation_also_holds_for_exchange_pairs() {
    let mut rng = common::rng(0x2b_08);
    let points = probe_points(5);
    let rep = Representation::new(RepKind::Spin1);
    let state = TwoParticleState::exchange_pair(
        RepKind::Spin1,
        random_mode(&mut rng, &rep),
        1.0,
        random_mode(&mut rng, &rep),
        -1.0,
        2.4,
        0.8,
    )
    .unwrap();
    for (x, y) in &points {
        let residual = state.conservation_residual(x, y, 0.7);
        assert!(residual <= 1e-12, "{residual:.3e}");
    }
}

#[test]
fn densities_and_currents_are_real() {
    let mut rng = common::rng(0x2b_09);
    let points = probe_points(4);
    for kind in [RepKind::Spin0, RepKind::Spin1, RepKind::Dirac] {
        let state = random_state(&mut rng, kind, 3);
        for (x, y) in &points {
            let rho = state.density(x, y, 0.5);
            assert!(rho.im.abs() <= 1e-13 * rho.re.abs().max(1.0), "{kind:?}");
            for slot in [Slot::Left, Slot::Right] {
                for mu in 0..4 {
                    let j = state.current(slot, mu, x, y, 0.5);
                    assert!(
                        j.im.abs() <= 1e-13 * j.re.abs().max(1.0),
                        "{kind:?} mu={mu}: {j}"
                    );
                }
            }
        }
    }
}

#[test]
fn marginal_currents_of_a_product_state_factorize() {
    let mut rng = common::rng(0x2b_0a);
    let rep = Representation::new(RepKind::Spin1);
    let left = random_mode(&mut rng, &rep);
    let right = random_mode(&mut rng, &rep);
    let state = TwoParticleState::new(
        RepKind::Spin1,
        vec![ProductTerm::new(C64::new(0.8, -0.3), left.clone(), right.clone())],
    )
    .unwrap();
    let weight_sq = C64::new(0.8, -0.3).norm_sqr();
    // per-slot bilinears; single-mode factors make them x-independent
    let bilinear = |mode: &ModeWavefunction, matrix: Option<usize>| -> C64 {
        let a = mode.amplitude();
        let v = match matrix {
            Some(mu) => rep.eta0().dot(&rep.beta(mu).dot(a)),
            None => rep.eta0().dot(a),
        };
        a.iter().zip(v.iter()).map(|(b, w)| b.conj() * w).sum()
    };
    let x = FourVector::new(0.3, -0.8, 1.1, 0.2);
    for mu in 0..4 {
        let expected = bilinear(&left, Some(mu)) * bilinear(&right, None) * weight_sq;
        let got = state.marginal_current(Slot::Left, mu, &x, 0.6);
        assert!(
            (got - expected).norm() <= 1e-12 * expected.norm().max(1.0),
            "mu={mu}: {got} vs {expected}"
        );
        let expected_r = bilinear(&left, None) * bilinear(&right, Some(mu)) * weight_sq;
        let got_r = state.marginal_current(Slot::Right, mu, &x, 0.6);
        assert!(
            (got_r - expected_r).norm() <= 1e-12 * expected_r.norm().max(1.0),
            "mu={mu} right: {got_r} vs {expected_r}"
        );
    }
}

#[test]
fn momentum_expectations_do_not_drift() {
    let mut rng = common::rng(0x2b_0b);
    for kind in [RepKind::Spin0, RepKind::Spin1, RepKind::Dirac] {
        for _ in 0..4 {
            let state = random_state(&mut rng, kind, 3).symmetrized().unwrap();
            let scale: f64 = state
                .momentum_expectation(Slot::Left, 0.0)
                .iter()
                .map(|c| c.norm())
                .fold(1.0, f64::max);
            for slot in [Slot::Left, Slot::Right] {
                let at0 = state.momentum_expectation(slot, 0.0);
                for tau in [0.7, 2.9, -1.4] {
                    let at = state.momentum_expectation(slot, tau);
                    for mu in 0..4 {
                        assert!(
                            (at[mu] - at0[mu]).norm() <= 1e-12 * scale,
                            "{kind:?} mu={mu} tau={tau}"
                        );
                        assert!(at[mu].im.abs() <= 1e-12 * scale, "{kind:?} imag part");
                    }
                }
            }
        }
    }
}

#[test]
fn spin_expectations_are_static_for_branch_pure_states() {
    let mut rng = common::rng(0x2b_0c);
    let axis = common::random_axis(&mut rng);
    for kind in [RepKind::Spin1, RepKind::Dirac] {
        let rep = Representation::new(kind);
        // all factors on the Plus branch: every slot bilinear oscillation
        // cancels because paired frequencies agree
        let plus_mode = |rng: &mut rand_chacha::ChaCha8Rng| {
            let p = common::timelike_momentum(rng);
            let frame = AmplitudeFrame::new(&rep, p).unwrap();
            frame.mode(Branch::Plus, rng.gen_range(0..kind.polarization_count()))
        };
        let terms = (0..3)
            .map(|_| {
                ProductTerm::new(
                    random_weight(&mut rng),
                    plus_mode(&mut rng),
                    plus_mode(&mut rng),
                )
            })
            .collect();
        let state = TwoParticleState::new(kind, terms).unwrap();
        for slot in [Slot::Left, Slot::Right] {
            let at0 = state.spin_expectation(slot, &axis, 0.0).unwrap();
            for tau in [0.8, -2.2] {
                let at = state.spin_expectation(slot, &axis, tau).unwrap();
                assert!((at - at0).norm() <= 1e-12 * at0.norm().max(1.0), "{kind:?}");
            }
        }
    }
}
