use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{c64, identity, pauli_vector, CMatrix};
use super::state::DensityMatrix;
use crate::{tol, Error, Result};

/// Real 3-vector `r⃗` with `‖r⃗‖ ≤ 1`, parameterizing `ρ = ½(𝟙 + r⃗·σ⃗)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(Vector3<f64>);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vector(Vector3::new(x, y, z))
    }

    pub fn from_vector(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if !(norm <= 1.0 + tol::STATE_EXACT) {
            return Err(Error::InvalidBloch { norm });
        }
        Ok(Self(v))
    }

    /// `r{sinθ cosφ, sinθ sinφ, cosθ}`.
    pub fn from_spherical(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::OutOfDomain {
                what: "Bloch radius",
                value: r,
            });
        }
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self::from_vector(Vector3::new(r * st * cp, r * st * sp, r * ct))
    }

    pub fn vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn r(&self) -> f64 {
        self.0.norm()
    }

    /// Polar angle in `[0, π]`; zero at the origin.
    pub fn theta(&self) -> f64 {
        let r = self.r();
        if r == 0.0 {
            0.0
        } else {
            (self.0.z / r).clamp(-1.0, 1.0).acos()
        }
    }

    /// Azimuth in `[0, 2π)`.
    pub fn phi(&self) -> f64 {
        let phi = self.0.y.atan2(self.0.x);
        if phi < 0.0 {
            phi + TAU
        } else {
            phi
        }
    }
}

pub fn bloch_to_state(r: &BlochVector) -> DensityMatrix {
    let sigma = pauli_vector();
    let mut m: CMatrix = identity(2);
    for (s, &ri) in sigma.iter().zip(r.vector().iter()) {
        m += s * c64(ri, 0.0);
    }
    DensityMatrix::new(m * c64(0.5, 0.0)).expect("Bloch vectors inside the ball give valid states")
}

pub fn state_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::NotQubit { dim: rho.dim() });
    }
    let [sx, sy, sz] = pauli_vector();
    BlochVector::new(
        rho.expectation(&sx),
        rho.expectation(&sy),
        rho.expectation(&sz),
    )
}

/// One vector of norm `r` with `θ ~ U[0, π)` and `φ ~ U[0, 2π)`.
///
/// Uniform in the angles, not in area. Consumes exactly two `u64` draws.
pub fn sample_bloch_vector<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Result<BlochVector> {
    let theta = PI * rng.random::<f64>();
    let phi = TAU * rng.random::<f64>();
    BlochVector::from_spherical(r, theta, phi)
}

pub fn random_bloch_states_with<R: Rng + ?Sized>(
    rng: &mut R,
    r: f64,
    n: usize,
) -> Result<Vec<BlochVector>> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::OutOfDomain {
            what: "Bloch radius",
            value: r,
        });
    }
    (0..n).map(|_| sample_bloch_vector(rng, r)).collect()
}

/// `n` Bloch vectors of norm `r` from a ChaCha8 stream seeded with `seed`.
pub fn random_bloch_states(r: f64, n: usize, seed: u64) -> Result<Vec<BlochVector>> {
    random_bloch_states_with(&mut ChaCha8Rng::seed_from_u64(seed), r, n)
}
