//! Subcommand implementations. Each builds its inputs from flags or a
//! config, runs the experiment, writes artifacts under the output directory,
//! and returns a tolerance error when a configured threshold is exceeded.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use dkp_core::algebra::{Beta0Spectrum, EtaIdentityResiduals, RepKind, Representation};
use dkp_core::evolution::{
    causality_experiment, CausalityReport, CausalitySetup, Evolver, GridState,
};
use dkp_core::kinematics::FourVector;
use dkp_core::multiparticle::{probe_points, ProductTerm, Slot, TwoParticleState};
use dkp_core::rotation::exchange_phase as label_factor;
use dkp_core::states::{
    AmplitudeFrame, Branch, ModeSuperposition, ModeTerm, ModeWavefunction,
};
use dkp_core::symmetries::{
    charge_conjugate, charge_reflection_residual, full_reflection, parity_transform,
    solution_residual, time_reverse,
};
use dkp_core::{C64, CVector};

use crate::config::{
    valid_wedge, ExchangeKind, ExperimentConfig, GridSpec, InitialData, RepName, Tolerances,
    TwoParticleInit,
};
use crate::report;
use crate::{CheckArg, CliError, Ctx, SpinArg};

// ---------------------------------------------------------------- algebra --

#[derive(Serialize)]
struct AlgebraReport {
    schema_version: u32,
    tolerance: f64,
    entries: Vec<AlgebraEntry>,
    pass: bool,
}

#[derive(Serialize)]
struct AlgebraEntry {
    rep: &'static str,
    beta0_multiplicities: Beta0Spectrum,
    #[serde(skip_serializing_if = "Option::is_none")]
    meson_exact: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meson_float: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta_identities: Option<EtaIdentityResiduals>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator_commutator: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
    pass: bool,
}

pub fn verify_algebra(rep: Option<RepName>, ctx: &Ctx) -> Result<(), CliError> {
    let kinds = match rep {
        Some(r) => vec![r],
        None => vec![RepName::Spin0, RepName::Spin1, RepName::Dirac],
    };
    let tol = Tolerances::default().identity * ctx.tol_scale;
    let mut entries = Vec::new();
    for name in kinds {
        let rep = Representation::new(name.kind());
        let entry = if name.kind().is_dkp() {
            let meson_exact = rep.meson_residual_exact()?;
            let meson_float = rep.meson_residual_float()?;
            let eta = rep.eta_identity_residuals()?;
            let generator = rep.generator_commutator_residual()?;
            let pass = meson_exact == 0 && meson_float <= tol && eta.all_zero() && generator <= tol;
            AlgebraEntry {
                rep: name.as_str(),
                beta0_multiplicities: rep.beta0_multiplicities(),
                meson_exact: Some(meson_exact),
                meson_float: Some(meson_float),
                eta_identities: Some(eta),
                generator_commutator: Some(generator),
                note: None,
                pass,
            }
        } else {
            // the Dirac kind is the Clifford comparison representation; the
            // meson-family identities are unsupported for it by design
            AlgebraEntry {
                rep: name.as_str(),
                beta0_multiplicities: rep.beta0_multiplicities(),
                meson_exact: None,
                meson_float: None,
                eta_identities: None,
                generator_commutator: None,
                note: Some("meson-algebra identities apply to the DKP kinds only"),
                pass: true,
            }
        };
        println!(
            "verify-algebra {}: {}",
            entry.rep,
            if entry.pass { "pass" } else { "fail" }
        );
        entries.push(entry);
    }
    let pass = entries.iter().all(|e| e.pass);
    let report = AlgebraReport {
        schema_version: 1,
        tolerance: tol,
        entries,
        pass,
    };
    report::ensure_dir(&ctx.out)?;
    report::write_json(&ctx.out, "verify_algebra.json", &report)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Tolerance("algebra residuals exceed tolerance".into()))
    }
}

// ----------------------------------------------------------------- evolve --

#[derive(Serialize)]
struct EvolveReport {
    schema_version: u32,
    rep: &'static str,
    grid: GridSpec,
    charge: f64,
    dtau: f64,
    steps: usize,
    initial_quasi_norm: f64,
    final_quasi_norm: f64,
    max_step_drift: f64,
    drift_tolerance: f64,
    pass: bool,
    artifacts: EvolveArtifacts,
}

#[derive(Serialize)]
struct EvolveArtifacts {
    quasi_norm_csv: &'static str,
    state_bin: &'static str,
    state_sidecar: &'static str,
}

pub fn evolve(config_path: &Path, ctx: &Ctx) -> Result<(), CliError> {
    let config = ExperimentConfig::load(config_path)?;
    let kind = config.rep.kind();
    let rep = Representation::new(kind);
    let grid = config.grid()?;
    let schedule = config.schedule()?;
    let initial = config
        .initial
        .as_ref()
        .ok_or_else(|| CliError::Usage("config needs an `initial` section".into()))?;

    let mut state = match initial {
        InitialData::Modes(list) => GridState::from_superposition(grid, &list.build()?, 0.0),
        InitialData::Bump(bump) => {
            if bump.component >= kind.dim() {
                return Err(CliError::Usage(format!(
                    "bump component {} out of range for {:?} (dim {})",
                    bump.component,
                    kind,
                    kind.dim()
                )));
            }
            let (center, sigma, component) = (bump.center, bump.sigma, bump.component);
            let amplitude = C64::new(bump.amplitude[0], bump.amplitude[1]);
            let dim = kind.dim();
            GridState::from_fn(grid, kind, move |x: &FourVector| {
                let d2: f64 = (0..4).map(|mu| (x.0[mu] - center[mu]).powi(2)).sum();
                let mut a = CVector::zeros(dim);
                a[component] = amplitude * (-d2 / (2.0 * sigma * sigma)).exp();
                a
            })
        }
    };

    let mut evolver = Evolver::with_coupling(kind, grid, config.charge, config.potential(&grid));
    let initial_quasi_norm = state.quasi_norm(&rep)?;
    let scale = initial_quasi_norm.abs().max(1.0);
    let mut rows = vec![format!("0,0,{initial_quasi_norm}")];
    let mut previous = initial_quasi_norm;
    let mut max_step_drift = 0.0_f64;
    for step in 1..=schedule.steps {
        evolver.step(&mut state, schedule.dtau)?;
        let current = state.quasi_norm(&rep)?;
        max_step_drift = max_step_drift.max((current - previous).abs() / scale);
        previous = current;
        let tau = step as f64 * schedule.dtau;
        rows.push(format!("{step},{tau},{current}"));
    }

    let drift_tolerance = config.tolerances.quasi_norm_drift * ctx.tol_scale;
    let pass = max_step_drift <= drift_tolerance;
    report::ensure_dir(&ctx.out)?;
    report::write_csv(&ctx.out, "quasi_norm.csv", "step,tau,quasi_norm", rows)?;
    report::write_state(&ctx.out, "final_state", &state)?;
    let report = EvolveReport {
        schema_version: 1,
        rep: config.rep.as_str(),
        grid: config.grid.expect("grid checked above"),
        charge: config.charge,
        dtau: schedule.dtau,
        steps: schedule.steps,
        initial_quasi_norm,
        final_quasi_norm: previous,
        max_step_drift,
        drift_tolerance,
        pass,
        artifacts: EvolveArtifacts {
            quasi_norm_csv: "quasi_norm.csv",
            state_bin: "final_state.bin",
            state_sidecar: "final_state.json",
        },
    };
    report::write_json(&ctx.out, "evolve_report.json", &report)?;
    println!(
        "evolve: {} steps, quasi-norm drift {max_step_drift:.3e} (tol {drift_tolerance:.3e}): {}",
        schedule.steps,
        if pass { "pass" } else { "fail" }
    );
    if pass {
        Ok(())
    } else {
        Err(CliError::Tolerance(format!(
            "quasi-norm drift {max_step_drift:.3e} exceeds {drift_tolerance:.3e}"
        )))
    }
}

// -------------------------------------------------------------- lightcone --

#[derive(Serialize)]
struct LightconeReport {
    schema_version: u32,
    rep: &'static str,
    setup: crate::config::LightconeSpec,
    result: CausalityReport,
    leakage_tolerance: f64,
    pass: bool,
}

pub fn lightcone(config_path: &Path, ctx: &Ctx) -> Result<(), CliError> {
    let config = ExperimentConfig::load(config_path)?;
    let lc = config
        .lightcone
        .ok_or_else(|| CliError::Usage("config needs a `lightcone` section".into()))?;
    let result = causality_experiment(&CausalitySetup {
        kind: config.rep.kind(),
        box_lengths: lc.box_lengths,
        resolution: lc.resolution,
        sigma: lc.sigma,
        tau: lc.tau,
        steps: lc.steps,
    })?;
    let leakage_tolerance = config.tolerances.leakage * ctx.tol_scale;
    let pass = result.leakage <= leakage_tolerance;
    println!(
        "lightcone: resolution {}, leakage {:.3e} (tol {leakage_tolerance:.3e}): {}",
        lc.resolution,
        result.leakage,
        if pass { "pass" } else { "fail" }
    );
    let report = LightconeReport {
        schema_version: 1,
        rep: config.rep.as_str(),
        setup: lc,
        result,
        leakage_tolerance,
        pass,
    };
    report::ensure_dir(&ctx.out)?;
    report::write_json(&ctx.out, "lightcone_report.json", &report)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Tolerance("causality leakage exceeds tolerance".into()))
    }
}

// ----------------------------------------------------------- two-particle --

#[derive(Serialize)]
struct SwapSample {
    tau: f64,
    residual: f64,
}

#[derive(Serialize)]
struct TwoParticleReport {
    schema_version: u32,
    rep: &'static str,
    init: &'static str,
    exchange: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    swap_residuals: Vec<SwapSample>,
    max_swap_residual: f64,
    conservation_residual: f64,
    momentum_drift: f64,
    marginal_currents: MarginalCurrents,
    tolerances: EffectiveTolerances,
    pass: bool,
}

#[derive(Serialize)]
struct MarginalCurrents {
    point: [f64; 4],
    left: [[f64; 2]; 4],
    right: [[f64; 2]; 4],
}

#[derive(Serialize)]
struct EffectiveTolerances {
    swap_residual: f64,
    conservation_residual: f64,
    momentum_drift: f64,
}

pub fn two_particle(config_path: &Path, ctx: &Ctx) -> Result<(), CliError> {
    let config = ExperimentConfig::load(config_path)?;
    let tp = config
        .two_particle
        .clone()
        .ok_or_else(|| CliError::Usage("config needs a `two_particle` section".into()))?;
    let schedule = config.schedule()?;
    let kind = config.rep.kind();
    let rep = Representation::new(kind);
    let points = probe_points(5);

    let (state, sign, init_name, seed_used) = match &tp.init {
        TwoParticleInit::Pair(pair) => {
            if !valid_wedge(pair.kappa, pair.xi) {
                return Err(CliError::Usage(format!(
                    "pair angles must satisfy 0 <= xi < kappa <= 2*pi (kappa = {}, xi = {})",
                    pair.kappa, pair.xi
                )));
            }
            let state = TwoParticleState::exchange_pair(
                kind,
                pair.zeta.build(&rep)?,
                pair.zeta.label,
                pair.phi.build(&rep)?,
                pair.phi.label,
                pair.kappa,
                pair.xi,
            )?;
            (state, label_factor(pair.phi.label).re, "pair", None)
        }
        TwoParticleInit::Random { terms } => {
            let seed = ctx.seed.or(config.seed).unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let raw = random_two_particle(&mut rng, &rep, *terms);
            let exchange = tp.exchange.unwrap_or(if kind.is_dkp() {
                ExchangeKind::Symmetric
            } else {
                ExchangeKind::Antisymmetric
            });
            let (state, sign) = match exchange {
                ExchangeKind::Symmetric => (raw.symmetrized()?, 1.0),
                ExchangeKind::Antisymmetric => (raw.antisymmetrized()?, -1.0),
            };
            (state, sign, "random", Some(seed))
        }
    };
    let exchange_name = if sign > 0.0 { "symmetric" } else { "antisymmetric" };
    let phase = C64::new(sign, 0.0);

    let swap_residuals: Vec<SwapSample> = (0..=schedule.steps)
        .map(|k| {
            let tau = k as f64 * schedule.dtau;
            SwapSample {
                tau,
                residual: state.exchange_residual(phase, &points, tau),
            }
        })
        .collect();
    let max_swap_residual = swap_residuals.iter().fold(0.0_f64, |m, s| m.max(s.residual));

    let final_tau = schedule.steps as f64 * schedule.dtau;
    let mut conservation_residual = 0.0_f64;
    for (x, y) in &points {
        for tau in [0.0, final_tau] {
            conservation_residual = conservation_residual.max(state.conservation_residual(x, y, tau));
        }
    }

    let mut momentum_drift = 0.0_f64;
    for slot in [Slot::Left, Slot::Right] {
        let reference = state.momentum_expectation(slot, 0.0);
        let scale = reference.iter().fold(1.0_f64, |m, v| m.max(v.norm()));
        let moved = state.momentum_expectation(slot, final_tau);
        for (a, b) in moved.iter().zip(reference.iter()) {
            momentum_drift = momentum_drift.max((a - b).norm() / scale);
        }
    }

    let probe = points[0].0;
    let current_row = |slot: Slot| -> [[f64; 2]; 4] {
        let mut row = [[0.0; 2]; 4];
        for (mu, slot_row) in row.iter_mut().enumerate() {
            let c = state.marginal_current(slot, mu, &probe, 0.0);
            *slot_row = [c.re, c.im];
        }
        row
    };
    let marginal_currents = MarginalCurrents {
        point: probe.0,
        left: current_row(Slot::Left),
        right: current_row(Slot::Right),
    };

    let tolerances = EffectiveTolerances {
        swap_residual: config.tolerances.swap_residual * ctx.tol_scale,
        conservation_residual: config.tolerances.conservation_residual * ctx.tol_scale,
        momentum_drift: config.tolerances.momentum_drift * ctx.tol_scale,
    };
    let pass = max_swap_residual <= tolerances.swap_residual
        && conservation_residual <= tolerances.conservation_residual
        && momentum_drift <= tolerances.momentum_drift;

    println!(
        "two-particle: swap {max_swap_residual:.3e}, conservation {conservation_residual:.3e}, \
         momentum drift {momentum_drift:.3e}: {}",
        if pass { "pass" } else { "fail" }
    );
    let report = TwoParticleReport {
        schema_version: 1,
        rep: config.rep.as_str(),
        init: init_name,
        exchange: exchange_name,
        seed: seed_used,
        swap_residuals,
        max_swap_residual,
        conservation_residual,
        momentum_drift,
        marginal_currents,
        tolerances,
        pass,
    };
    report::ensure_dir(&ctx.out)?;
    report::write_json(&ctx.out, "two_particle_report.json", &report)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Tolerance("two-particle residuals exceed tolerance".into()))
    }
}

// ---------------------------------------------------------- exchange-phase --

pub fn exchange_phase(spin: SpinArg, k: f64, l: f64) -> Result<(), CliError> {
    let kind = match spin {
        SpinArg::Zero => RepKind::Spin0,
        SpinArg::One => RepKind::Spin1,
        SpinArg::Half => RepKind::Dirac,
    };
    let labels = kind.rotation_labels();
    for (name, value) in [("k", k), ("l", l)] {
        if !labels.contains(&value) {
            return Err(CliError::Usage(format!(
                "label {name} = {value} is not hosted by {kind:?}; allowed: {labels:?}"
            )));
        }
    }
    let factor = label_factor(l);
    let verdict = if factor.re > 0.0 { "symmetric" } else { "antisymmetric" };
    println!("exchange factor exp(2*pi*i*l) = {:+}", factor.re);
    println!("verdict: {verdict} (k = {k}, l = {l}, {kind:?})");
    Ok(())
}

// -------------------------------------------------------------- symmetries --

#[derive(Clone, Copy, PartialEq, Eq)]
enum MapName {
    C,
    P,
    T,
    Tpc,
}

impl MapName {
    fn as_str(self) -> &'static str {
        match self {
            MapName::C => "c",
            MapName::P => "p",
            MapName::T => "t",
            MapName::Tpc => "tpc",
        }
    }

    fn apply(self, sup: &ModeSuperposition) -> Result<ModeSuperposition, CliError> {
        let image = match self {
            MapName::C => charge_conjugate(sup)?,
            MapName::P => parity_transform(sup)?,
            MapName::T => time_reverse(sup)?,
            MapName::Tpc => full_reflection(sup)?,
        };
        Ok(image)
    }

    fn supports(self, kind: RepKind) -> bool {
        match self {
            MapName::C | MapName::T => kind.is_dkp(),
            MapName::P | MapName::Tpc => true,
        }
    }
}

#[derive(Serialize)]
struct SymmetryRow {
    rep: &'static str,
    map: &'static str,
    supported: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    involution_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    charge_reflection: Option<f64>,
    pass: bool,
}

#[derive(Serialize)]
struct SymmetriesReport {
    schema_version: u32,
    seed: u64,
    tol_scale: f64,
    rows: Vec<SymmetryRow>,
    pass: bool,
}

pub fn symmetries(check: CheckArg, ctx: &Ctx) -> Result<(), CliError> {
    let maps: Vec<MapName> = match check {
        CheckArg::All => vec![MapName::C, MapName::P, MapName::T, MapName::Tpc],
        CheckArg::C => vec![MapName::C],
        CheckArg::P => vec![MapName::P],
        CheckArg::T => vec![MapName::T],
        CheckArg::Tpc => vec![MapName::Tpc],
    };
    let seed = ctx.seed.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tols = Tolerances::default();
    let solution_tol = tols.solution_residual * ctx.tol_scale;
    let involution_tol = tols.involution_residual * ctx.tol_scale;
    let reflection_tol = tols.charge_reflection * ctx.tol_scale;

    let mut rows = Vec::new();
    for name in [RepName::Spin0, RepName::Spin1, RepName::Dirac] {
        let kind = name.kind();
        let rep = Representation::new(kind);
        let sup = random_superposition(&mut rng, &rep);
        let sample: Vec<(FourVector, f64)> = (0..6)
            .map(|_| {
                let x = FourVector::new(
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                );
                (x, rng.gen_range(-1.5..1.5))
            })
            .collect();
        for &map in &maps {
            if !map.supports(kind) {
                rows.push(SymmetryRow {
                    rep: name.as_str(),
                    map: map.as_str(),
                    supported: false,
                    solution_residual: None,
                    involution_residual: None,
                    charge_reflection: None,
                    pass: true,
                });
                continue;
            }
            let image = map.apply(&sup)?;
            let solution = solution_residual(&image);
            let twice = map.apply(&image)?;
            let involution = superposition_gap(&twice, &sup, &sample);
            let pass = solution <= solution_tol && involution <= involution_tol;
            rows.push(SymmetryRow {
                rep: name.as_str(),
                map: map.as_str(),
                supported: true,
                solution_residual: Some(solution),
                involution_residual: Some(involution),
                charge_reflection: None,
                pass,
            });
        }
    }

    // conjugated evolution with flipped charge on a small odd lattice, where
    // the identity is exact for arbitrary spectral content
    if maps.contains(&MapName::C) {
        let grid = dkp_core::evolution::Grid::new([9, 7, 1, 7], [5.0, 9.0, 1.0, 8.0])?;
        let potential = dkp_core::evolution::Potential::Cosine {
            components: FourVector::new(0.15, 0.0, 0.1, -0.05),
            wavevector: grid.momentum([1, 0, 0, 1]),
            phase: 0.4,
        };
        for name in [RepName::Spin0, RepName::Spin1] {
            let kind = name.kind();
            let mut state = GridState::zeros(grid, kind);
            for v in state.data_mut() {
                *v = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            let residual = charge_reflection_residual(
                kind,
                grid,
                0.6,
                Some(potential.clone()),
                &state,
                0.04,
                6,
            )?;
            rows.push(SymmetryRow {
                rep: name.as_str(),
                map: "c-lattice",
                supported: true,
                solution_residual: None,
                involution_residual: None,
                charge_reflection: Some(residual),
                pass: residual <= reflection_tol,
            });
        }
    }

    let pass = rows.iter().all(|r| r.pass);
    for row in &rows {
        let status = if !row.supported {
            "skipped (needs a DKP kind)"
        } else if row.pass {
            "pass"
        } else {
            "fail"
        };
        println!("symmetries {:>5} {:>9}: {status}", row.rep, row.map);
    }
    let report = SymmetriesReport {
        schema_version: 1,
        seed,
        tol_scale: ctx.tol_scale,
        rows,
        pass,
    };
    report::ensure_dir(&ctx.out)?;
    report::write_json(&ctx.out, "symmetries_report.json", &report)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Tolerance("symmetry residuals exceed tolerance".into()))
    }
}

// ----------------------------------------------------------------- helpers --

fn unit3(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

fn random_timelike(rng: &mut impl Rng) -> FourVector {
    let mass: f64 = rng.gen_range(0.5..2.0);
    let r = rng.gen_range(0.0..2.0 * mass);
    let dir = unit3(rng);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let energy = (mass * mass + r * r).sqrt();
    FourVector::new(sign * energy, r * dir[0], r * dir[1], r * dir[2])
}

fn random_mode(rng: &mut impl Rng, rep: &Representation) -> ModeWavefunction {
    let kind = rep.kind();
    let p = random_timelike(rng);
    let frame = AmplitudeFrame::new(rep, p).expect("sampled momentum is timelike");
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

fn random_two_particle(
    rng: &mut impl Rng,
    rep: &Representation,
    terms: usize,
) -> TwoParticleState {
    let terms = (0..terms)
        .map(|_| {
            ProductTerm::new(
                random_weight(rng),
                random_mode(rng, rep),
                random_mode(rng, rep),
            )
        })
        .collect();
    TwoParticleState::new(rep.kind(), terms).expect("terms match the representation")
}

fn random_superposition(rng: &mut impl Rng, rep: &Representation) -> ModeSuperposition {
    let terms = (0..3)
        .map(|_| ModeTerm {
            weight: random_weight(rng),
            mode: random_mode(rng, rep),
        })
        .collect();
    ModeSuperposition::new(rep.kind(), terms).expect("terms match the representation")
}

/// Relative sup gap between two superpositions over sample points.
fn superposition_gap(
    a: &ModeSuperposition,
    b: &ModeSuperposition,
    sample: &[(FourVector, f64)],
) -> f64 {
    let mut num = 0.0_f64;
    let mut den = 1.0_f64;
    for (x, tau) in sample {
        let va = a.evaluate(x, *tau);
        let vb = b.evaluate(x, *tau);
        for (ea, eb) in va.iter().zip(vb.iter()) {
            num = num.max((ea - eb).norm());
            den = den.max(eb.norm());
        }
    }
    num / den
}
