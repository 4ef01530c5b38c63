//! Minkowski kinematics in the (+,-,-,-) signature with hbar = c = 1.
//!
//! The mass-shell map classifies any real four-momentum: there is no a-priori
//! shell constraint in the parametrized theory, so spacelike and lightlike
//! momenta are first-class citizens (they only lose the amplitude frames, not
//! the propagator).

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::tol;

/// Contravariant four-vector `(a^0, a^1, a^2, a^3)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        FourVector([a0, a1, a2, a3])
    }

    /// Time component `a^0`.
    pub fn time(&self) -> f64 {
        self.0[0]
    }

    /// Spatial part `(a^1, a^2, a^3)`.
    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn scaled(&self, s: f64) -> Self {
        FourVector([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }

    pub fn neg(&self) -> Self {
        self.scaled(-1.0)
    }

    /// Spatial reflection `(a^0, -a)`.
    pub fn spatial_reflected(&self) -> Self {
        FourVector([self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }

    /// Time reflection `(-a^0, a)`.
    pub fn time_reflected(&self) -> Self {
        FourVector([-self.0[0], self.0[1], self.0[2], self.0[3]])
    }

    pub fn add(&self, other: &FourVector) -> Self {
        FourVector([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
            self.0[3] + other.0[3],
        ])
    }

    pub fn sub(&self, other: &FourVector) -> Self {
        self.add(&other.neg())
    }

    /// Minkowski square `a.a`.
    pub fn norm2(&self) -> f64 {
        minkowski_dot(self, self)
    }
}

impl std::ops::Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, mu: usize) -> &f64 {
        &self.0[mu]
    }
}

/// `a.b = a^0 b^0 - a^1 b^1 - a^2 b^2 - a^3 b^3`.
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.0[0] * b.0[0] - a.0[1] * b.0[1] - a.0[2] * b.0[2] - a.0[3] * b.0[3]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalClass {
    Timelike,
    Lightlike,
    Spacelike,
}

/// Output of [`mass_shell`].
///
/// For timelike momenta `mass` is the positive root of `p.p`, `energy_sign`
/// is `p^0 / |p^0|` and `energy` is `|p^0|`. For the other classes `mass` is 0
/// and `energy_sign`/`energy` still describe `p^0` (sign 0 when `p^0 = 0`).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MassShell {
    pub class: CausalClass,
    pub mass: f64,
    pub energy_sign: f64,
    pub energy: f64,
}

/// Classify `p` against the light cone and extract shell data.
///
/// `tol` bounds the lightlike band: `|p.p| <= tol` classifies as lightlike.
/// Errors with [`CoreError::AmbiguousSign`] if a timelike classification would
/// come with `p^0 = 0` (impossible for exact reals, guarded for NaN safety).
pub fn mass_shell(p: &FourVector, tol: f64) -> Result<MassShell> {
    let q = p.norm2();
    let class = if q.abs() <= tol {
        CausalClass::Lightlike
    } else if q > 0.0 {
        CausalClass::Timelike
    } else {
        CausalClass::Spacelike
    };
    let energy = p.time().abs();
    let energy_sign = if p.time() == 0.0 {
        0.0
    } else {
        p.time().signum()
    };
    if class == CausalClass::Timelike && energy_sign == 0.0 {
        return Err(CoreError::AmbiguousSign);
    }
    let mass = if class == CausalClass::Timelike {
        q.sqrt()
    } else {
        0.0
    };
    Ok(MassShell {
        class,
        mass,
        energy_sign,
        energy,
    })
}

/// [`mass_shell`] with the default classification tolerance.
pub fn mass_shell_default(p: &FourVector) -> Result<MassShell> {
    mass_shell(p, tol::CLASSIFICATION_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_hand_value() {
        // (2,1,0,0).(3,1,0,0) = 6 - 1
        let a = FourVector::new(2.0, 1.0, 0.0, 0.0);
        let b = FourVector::new(3.0, 1.0, 0.0, 0.0);
        assert_eq!(minkowski_dot(&a, &b), 5.0);
    }

    #[test]
    fn classes() {
        let t = mass_shell_default(&FourVector::new(-2.0, 1.0, 0.0, 0.0)).unwrap();
        assert_eq!(t.class, CausalClass::Timelike);
        assert!((t.mass - 3.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(t.energy_sign, -1.0);
        assert_eq!(t.energy, 2.0);

        let s = mass_shell_default(&FourVector::new(1.0, 2.0, 0.0, 0.0)).unwrap();
        assert_eq!(s.class, CausalClass::Spacelike);
        assert_eq!(s.mass, 0.0);

        let l = mass_shell_default(&FourVector::new(5.0, 3.0, 4.0, 0.0)).unwrap();
        assert_eq!(l.class, CausalClass::Lightlike);
    }

    #[test]
    fn lightlike_band_is_tolerance_controlled() {
        let p = FourVector::new(1.0 + 1e-14, 1.0, 0.0, 0.0);
        assert_eq!(
            mass_shell(&p, 1e-12).unwrap().class,
            CausalClass::Lightlike
        );
        assert_eq!(
            mass_shell(&p, 1e-16).unwrap().class,
            CausalClass::Timelike
        );
    }
}
