//! Versioned JSON experiment config and the builders that turn it into
//! library values.
//!
//! The schema is strict: unknown fields are rejected so typos surface as
//! config errors, and parse -> serialize -> parse is the identity on every
//! valid document.

use std::f64::consts::TAU;
use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use dkp_core::algebra::{RepKind, Representation};
use dkp_core::evolution::{Grid, Potential};
use dkp_core::kinematics::FourVector;
use dkp_core::states::{AmplitudeFrame, Branch, ModeSuperposition, ModeTerm, ModeWavefunction};
use dkp_core::{C64, CVector};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RepName {
    Spin0,
    Spin1,
    Dirac,
}

impl RepName {
    pub fn kind(self) -> RepKind {
        match self {
            RepName::Spin0 => RepKind::Spin0,
            RepName::Spin1 => RepKind::Spin1,
            RepName::Dirac => RepKind::Dirac,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RepName::Spin0 => "spin0",
            RepName::Spin1 => "spin1",
            RepName::Dirac => "dirac",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchName {
    Plus,
    Minus,
    Zero,
}

impl BranchName {
    pub fn branch(self) -> Branch {
        match self {
            BranchName::Plus => Branch::Plus,
            BranchName::Minus => Branch::Minus,
            BranchName::Zero => Branch::Zero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Must be 1; future schema revisions bump it.
    pub schema_version: u32,
    pub rep: RepName,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub initial: Option<InitialData>,
    #[serde(default)]
    pub potential: Option<PotentialSpec>,
    #[serde(default)]
    pub charge: f64,
    #[serde(default)]
    pub schedule: Option<ScheduleSpec>,
    #[serde(default)]
    pub lightcone: Option<LightconeSpec>,
    #[serde(default)]
    pub two_particle: Option<TwoParticleSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub sizes: [usize; 4],
    pub box_lengths: [f64; 4],
}

/// Initial data for a grid run: an explicit mode list or a smooth bump.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialData {
    Modes(ModeList),
    Bump(BumpSpec),
}

/// The documented mode-list schema: representation kind plus a list of
/// `{p, branch, pol | index, weight}` entries. `pol` gives the amplitude
/// as complex `[re, im]` pairs; `index` selects a frame column instead.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeList {
    pub rep: RepName,
    pub modes: Vec<ModeSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub p: [f64; 4],
    pub branch: BranchName,
    #[serde(default)]
    pub pol: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub index: Option<usize>,
    pub weight: [f64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpSpec {
    pub center: [f64; 4],
    pub sigma: f64,
    /// Spinor component carrying the bump.
    pub component: usize,
    pub amplitude: [f64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    Constant {
        components: [f64; 4],
    },
    /// Cosine wave with the wavevector given in lattice bins so the sampled
    /// field is always periodic on the box.
    Cosine {
        components: [f64; 4],
        wavevector_bins: [usize; 4],
        phase: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSpec {
    pub dtau: f64,
    pub steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LightconeSpec {
    /// Extents of the reduced `[t, x]` box.
    pub box_lengths: [f64; 2],
    pub resolution: usize,
    pub sigma: f64,
    pub tau: f64,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoParticleSpec {
    pub init: TwoParticleInit,
    /// Projection applied to the built state; defaults to symmetric for the
    /// DKP kinds and antisymmetric for Dirac. Ignored for exchange pairs,
    /// whose verdict comes from the second label.
    #[serde(default)]
    pub exchange: Option<ExchangeKind>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TwoParticleInit {
    /// Two-term construction with wedge angles `kappa`, `xi` and per-particle
    /// rotation labels.
    Pair(PairSpec),
    /// Seeded random product state with the given number of terms.
    Random { terms: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub zeta: PairMemberSpec,
    pub phi: PairMemberSpec,
    pub kappa: f64,
    pub xi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairMemberSpec {
    pub p: [f64; 4],
    pub branch: BranchName,
    pub index: usize,
    pub label: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExchangeKind {
    Symmetric,
    Antisymmetric,
}

/// Pass/fail thresholds; each is multiplied by `--tol-scale` at use.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "d_identity")]
    pub identity: f64,
    #[serde(default = "d_drift")]
    pub quasi_norm_drift: f64,
    #[serde(default = "d_leakage")]
    pub leakage: f64,
    #[serde(default = "d_swap")]
    pub swap_residual: f64,
    #[serde(default = "d_swap")]
    pub conservation_residual: f64,
    #[serde(default = "d_swap")]
    pub momentum_drift: f64,
    #[serde(default = "d_solution")]
    pub solution_residual: f64,
    #[serde(default = "d_involution")]
    pub involution_residual: f64,
    #[serde(default = "d_reflection")]
    pub charge_reflection: f64,
}

fn d_identity() -> f64 {
    1e-14
}
fn d_drift() -> f64 {
    1e-10
}
fn d_leakage() -> f64 {
    1e-3
}
fn d_swap() -> f64 {
    1e-12
}
fn d_solution() -> f64 {
    1e-13
}
fn d_involution() -> f64 {
    1e-12
}
fn d_reflection() -> f64 {
    1e-10
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            identity: d_identity(),
            quasi_norm_drift: d_drift(),
            leakage: d_leakage(),
            swap_residual: d_swap(),
            conservation_residual: d_swap(),
            momentum_drift: d_swap(),
            solution_residual: d_solution(),
            involution_residual: d_involution(),
            charge_reflection: d_reflection(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let config: ExperimentConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != 1 {
            return Err(CliError::Usage(format!(
                "unsupported schema_version {}; this build reads version 1",
                self.schema_version
            )));
        }
        if let Some(grid) = &self.grid {
            if grid.sizes.contains(&0) {
                return Err(CliError::Usage("grid sizes must be nonzero".into()));
            }
            if grid.box_lengths.iter().any(|&l| !l.is_finite() || l <= 0.0) {
                return Err(CliError::Usage("box lengths must be positive".into()));
            }
        }
        if let Some(InitialData::Modes(list)) = &self.initial {
            if list.rep != self.rep {
                return Err(CliError::Usage(format!(
                    "mode list rep {} does not match config rep {}",
                    list.rep.as_str(),
                    self.rep.as_str()
                )));
            }
            for (i, mode) in list.modes.iter().enumerate() {
                match (&mode.pol, mode.index) {
                    (Some(_), None) | (None, Some(_)) => {}
                    _ => {
                        return Err(CliError::Usage(format!(
                            "mode {i}: give exactly one of `pol` or `index`"
                        )))
                    }
                }
            }
        }
        if let Some(schedule) = &self.schedule {
            if !(schedule.dtau.is_finite() && schedule.dtau != 0.0) {
                return Err(CliError::Usage("schedule dtau must be finite and nonzero".into()));
            }
        }
        if let Some(lc) = &self.lightcone {
            if lc.box_lengths.iter().any(|&l| !l.is_finite() || l <= 0.0) {
                return Err(CliError::Usage("lightcone box lengths must be positive".into()));
            }
        }
        if let Some(tp) = &self.two_particle {
            if let TwoParticleInit::Random { terms } = &tp.init {
                if *terms == 0 {
                    return Err(CliError::Usage("two_particle random init needs terms >= 1".into()));
                }
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid, CliError> {
        let spec = self
            .grid
            .as_ref()
            .ok_or_else(|| CliError::Usage("config needs a `grid` section".into()))?;
        Ok(Grid::new(spec.sizes, spec.box_lengths)?)
    }

    pub fn schedule(&self) -> Result<ScheduleSpec, CliError> {
        self.schedule
            .ok_or_else(|| CliError::Usage("config needs a `schedule` section".into()))
    }

    pub fn potential(&self, grid: &Grid) -> Option<Potential> {
        self.potential.as_ref().map(|spec| match *spec {
            PotentialSpec::Constant { components } => Potential::Constant {
                components: FourVector(components),
            },
            PotentialSpec::Cosine {
                components,
                wavevector_bins,
                phase,
            } => Potential::Cosine {
                components: FourVector(components),
                wavevector: grid.momentum(wavevector_bins),
                phase,
            },
        })
    }
}

impl ModeSpec {
    pub fn build(&self, rep: &Representation) -> Result<ModeWavefunction, CliError> {
        let p = FourVector(self.p);
        let branch = self.branch.branch();
        if let Some(pol) = &self.pol {
            if pol.len() != rep.dim() {
                return Err(CliError::Usage(format!(
                    "mode pol has {} components, rep {:?} needs {}",
                    pol.len(),
                    rep.kind(),
                    rep.dim()
                )));
            }
            let amplitude = CVector::from_iter(pol.iter().map(|c| C64::new(c[0], c[1])));
            Ok(ModeWavefunction::new(p, branch, amplitude)?)
        } else {
            let index = self.index.expect("validated: pol xor index");
            let frame = AmplitudeFrame::new(rep, p)?;
            let count = match branch {
                Branch::Plus | Branch::Minus => rep.kind().polarization_count(),
                Branch::Zero => rep.kind().zero_mode_count(),
            };
            if index >= count {
                return Err(CliError::Usage(format!(
                    "mode index {index} out of range for {:?} branch {:?} ({count} columns)",
                    rep.kind(),
                    branch
                )));
            }
            Ok(frame.mode(branch, index))
        }
    }
}

impl ModeList {
    pub fn build(&self) -> Result<ModeSuperposition, CliError> {
        let rep = Representation::new(self.rep.kind());
        let terms = self
            .modes
            .iter()
            .map(|spec| {
                Ok(ModeTerm {
                    weight: C64::new(spec.weight[0], spec.weight[1]),
                    mode: spec.build(&rep)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(ModeSuperposition::new(self.rep.kind(), terms)?)
    }
}

impl PairMemberSpec {
    pub fn build(&self, rep: &Representation) -> Result<ModeWavefunction, CliError> {
        ModeSpec {
            p: self.p,
            branch: self.branch,
            pol: None,
            index: Some(self.index),
            weight: [1.0, 0.0],
        }
        .build(rep)
    }
}

/// Angle range sanity used by pair configs; the library re-checks.
pub fn valid_wedge(kappa: f64, xi: f64) -> bool {
    0.0 <= xi && xi < kappa && kappa <= TAU
}
