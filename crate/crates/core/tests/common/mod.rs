//! Shared helpers for the integration suites: a dense matrix exponential that
//! is independent of the library's propagator formulas, and seeded momentum
//! samplers covering every causal class.
#![allow(dead_code)]

use dkp_core::kinematics::FourVector;
use dkp_core::{C64, CMatrix, CVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix exponential by scaling and squaring with the degree-13 Pade
/// approximant (Higham 2005). Only dense linear algebra: this is the oracle
/// the closed-form propagator is checked against, so it must not share code
/// with it.
pub fn expm(a: &CMatrix) -> CMatrix {
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    const THETA13: f64 = 5.371920351148152;

    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.mapv(|v| v / C64::new(2f64.powi(squarings), 0.0));
    let eye = CMatrix::eye(n);
    let a2 = a.dot(&a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    let u_high = a6.mapv(|v| v * B[13]) + a4.mapv(|v| v * B[11]) + a2.mapv(|v| v * B[9]);
    let u_low = a6.mapv(|v| v * B[7])
        + a4.mapv(|v| v * B[5])
        + a2.mapv(|v| v * B[3])
        + eye.mapv(|v| v * B[1]);
    let u = a.dot(&(a6.dot(&u_high) + u_low));

    let v_high = a6.mapv(|v| v * B[12]) + a4.mapv(|v| v * B[10]) + a2.mapv(|v| v * B[8]);
    let v = a6.dot(&v_high)
        + a6.mapv(|v| v * B[6])
        + a4.mapv(|v| v * B[4])
        + a2.mapv(|v| v * B[2])
        + eye.mapv(|v| v * B[0]);

    let mut x = solve(&(&v - &u), &(&v + &u));
    for _ in 0..squarings {
        x = x.dot(&x);
    }
    x
}

fn one_norm(a: &CMatrix) -> f64 {
    let mut worst = 0.0_f64;
    for c in 0..a.ncols() {
        let col: f64 = (0..a.nrows()).map(|r| a[[r, c]].norm()).sum();
        worst = worst.max(col);
    }
    worst
}

/// Solve `a x = b` for a square complex system by LU with partial pivoting.
fn solve(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut lu = a.clone();
    let mut x = b.clone();
    for k in 0..n {
        let mut pivot = k;
        for r in k + 1..n {
            if lu[[r, k]].norm() > lu[[pivot, k]].norm() {
                pivot = r;
            }
        }
        if pivot != k {
            for c in 0..n {
                lu.swap([k, c], [pivot, c]);
                x.swap([k, c], [pivot, c]);
            }
        }
        let d = lu[[k, k]];
        for r in k + 1..n {
            let f = lu[[r, k]] / d;
            lu[[r, k]] = f;
            for c in k + 1..n {
                let v = lu[[k, c]];
                lu[[r, c]] -= f * v;
            }
            for c in 0..n {
                let v = x[[k, c]];
                x[[r, c]] -= f * v;
            }
        }
    }
    for k in (0..n).rev() {
        for c in 0..n {
            let mut s = x[[k, c]];
            for r in k + 1..n {
                s -= lu[[k, r]] * x[[r, c]];
            }
            x[[k, c]] = s / lu[[k, k]];
        }
    }
    x
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0_f64, |m, v| m.max(v.norm()))
}

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

pub fn random_axis(rng: &mut impl Rng) -> [f64; 3] {
    unit3(rng)
}

/// Timelike momentum with mass in `[0.5, 2.4]`, spatial radius up to three
/// masses, either energy sign. Components stay below 10 in magnitude.
pub fn timelike_momentum(rng: &mut impl Rng) -> FourVector {
    let mass: f64 = rng.gen_range(0.5..2.4);
    let r = rng.gen_range(0.0..3.0 * mass);
    let dir = unit3(rng);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let energy = (mass * mass + r * r).sqrt();
    FourVector::new(sign * energy, r * dir[0], r * dir[1], r * dir[2])
}

/// Spacelike momentum with `p.p = -mu^2`. Off the mass shell the propagator
/// grows like `e^{mu |dtau|}`, so `mu` is capped at 1 to keep absolute
/// comparisons against the exponential oracle meaningful over `|dtau| <= 5`;
/// larger `mu` is exercised separately with growth-scaled tolerances.
pub fn spacelike_momentum(rng: &mut impl Rng) -> FourVector {
    let mu: f64 = rng.gen_range(0.1..1.0);
    let p0: f64 = rng.gen_range(-1.5..1.5);
    let r = (mu * mu + p0 * p0).sqrt();
    let dir = unit3(rng);
    FourVector::new(p0, r * dir[0], r * dir[1], r * dir[2])
}

/// Exactly lightlike momentum, either energy sign. The propagator is a
/// quadratic polynomial in `dtau` on the cone, with entries of size
/// `|p|^2 dtau^2 / 2`; the radius cap keeps those of order 10.
pub fn lightlike_momentum(rng: &mut impl Rng) -> FourVector {
    let r: f64 = rng.gen_range(0.3..2.0);
    let dir = unit3(rng);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    FourVector::new(sign * r, r * dir[0], r * dir[1], r * dir[2])
}

pub fn random_complex_vector(rng: &mut impl Rng, dim: usize) -> CVector {
    CVector::from_iter(
        (0..dim).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))),
    )
}
