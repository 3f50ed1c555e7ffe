//! Closed-form spin-1/2 precession, torque and irreality machinery.
//!
//! For `H = ω S_h` with `S_h = ½ ĥ·σ⃗` and phase `τ = ωt`, the Heisenberg
//! Pauli vector is
//! `σ⃗(τ) = σ⃗ cos τ + ĥ × σ⃗ sin τ + ĥ (ĥ·σ⃗)(1 − cos τ)`, and the
//! dimensionless torque is `T⃗(τ₁, τ₂) = (σ⃗(τ₂) − σ⃗(τ₁))/(τ₂ − τ₁)`, whose
//! `τ₂ → τ₁` limit is `T⃗_τ = ĥ × σ⃗ cos τ + (ĥ (ĥ·σ⃗) − σ⃗) sin τ`.
//!
//! At `τ = 2π` with `ĥ = ẑ` the `x` components are `T^x = x̂·(ẑ × σ⃗) = −σ_y`
//! and `σ^x = σ_x`, whose irrealities in `ρ₀ = ½(𝟙 + r⃗·σ⃗)` have the closed forms
//! `H((1 + |r_y|)/2) − H((1 + r)/2)` and `H((1 + |r_x|)/2) − H((1 + r)/2)`.
//! Their sum is bounded below by `ln 2 − H((1 + r)/2)`.

use std::f64::consts::{FRAC_PI_2, LN_2, TAU};

use nalgebra::Vector3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::qcore::{
    binary_entropy, bloch_to_state, c64, pauli_vector, sample_bloch_vector, BlochVector, CMatrix,
    Observable,
};
use crate::realism::irreality;
use crate::{tol, Error, Result};

pub type PauliTriple = [CMatrix; 3];

/// Number of `φ` samples on each analytic lower-boundary curve.
pub const CURVE_POINTS: usize = 360;

/// Bloch radii of the four Figure-1 bands.
pub const FIGURE1_RADII: [f64; 4] = [0.2, 0.5, 0.8, 1.0];

fn unit_axis(h: &Vector3<f64>) -> Result<Vector3<f64>> {
    let norm = h.norm();
    if !((norm - 1.0).abs() <= tol::STATE_EXACT) {
        return Err(Error::NonUnitAxis { norm });
    }
    Ok(*h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecessionConfig {
    h_hat: Vector3<f64>,
    tau: f64,
}

impl PrecessionConfig {
    pub fn new(h_hat: Vector3<f64>, tau: f64) -> Result<Self> {
        Ok(Self {
            h_hat: unit_axis(&h_hat)?,
            tau,
        })
    }

    pub fn h_hat(&self) -> &Vector3<f64> {
        &self.h_hat
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// `Σ_i v_i M_i`.
pub fn dot(v: &Vector3<f64>, ops: &PauliTriple) -> CMatrix {
    ops.iter()
        .zip(v.iter())
        .fold(CMatrix::zeros(2, 2), |acc, (m, &vi)| acc + m * c64(vi, 0.0))
}

/// `(v × σ⃗)_i = ε_ijk v_j σ_k`.
fn cross(v: &Vector3<f64>, sigma: &PauliTriple) -> PauliTriple {
    let [sx, sy, sz] = sigma;
    let s = |m: &CMatrix, k: f64| m * c64(k, 0.0);
    [
        s(sz, v.y) - s(sy, v.z),
        s(sx, v.z) - s(sz, v.x),
        s(sy, v.x) - s(sx, v.y),
    ]
}

fn combine(parts: &[(&PauliTriple, f64)]) -> PauliTriple {
    std::array::from_fn(|i| {
        parts.iter().fold(CMatrix::zeros(2, 2), |acc, (ops, k)| {
            acc + &ops[i] * c64(*k, 0.0)
        })
    })
}

/// `h (h·σ⃗)` as a triple.
fn projected(h: &Vector3<f64>, sigma: &PauliTriple) -> PauliTriple {
    let hs = dot(h, sigma);
    std::array::from_fn(|i| &hs * c64(h[i], 0.0))
}

/// Heisenberg-picture Pauli vector `σ⃗(τ)`.
pub fn pauli_heisenberg(cfg: &PrecessionConfig) -> PauliTriple {
    let sigma = pauli_vector();
    let h = cfg.h_hat;
    let (s, c) = cfg.tau.sin_cos();
    combine(&[
        (&sigma, c),
        (&cross(&h, &sigma), s),
        (&projected(&h, &sigma), 1.0 - c),
    ])
}

/// `(σ⃗(τ₂) − σ⃗(τ₁))/(τ₂ − τ₁)`.
pub fn finite_torque(h_hat: &Vector3<f64>, tau1: f64, tau2: f64) -> Result<PauliTriple> {
    if tau1 == tau2 {
        return Err(Error::OutOfDomain {
            what: "torque interval τ₂ − τ₁",
            value: 0.0,
        });
    }
    let s1 = pauli_heisenberg(&PrecessionConfig::new(*h_hat, tau1)?);
    let s2 = pauli_heisenberg(&PrecessionConfig::new(*h_hat, tau2)?);
    let k = 1.0 / (tau2 - tau1);
    Ok(std::array::from_fn(|i| (&s2[i] - &s1[i]) * c64(k, 0.0)))
}

/// `T⃗_τ = ĥ × σ⃗ cos τ + (ĥ (ĥ·σ⃗) − σ⃗) sin τ`.
pub fn instantaneous_torque(h_hat: &Vector3<f64>, tau: f64) -> Result<PauliTriple> {
    let h = unit_axis(h_hat)?;
    let sigma = pauli_vector();
    let (s, c) = tau.sin_cos();
    Ok(combine(&[
        (&cross(&h, &sigma), c),
        (&projected(&h, &sigma), s),
        (&sigma, -s),
    ]))
}

/// Irrealities of the torque and spin `x` components at `τ = 2π`, `ĥ = ẑ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorquePair {
    /// `𝔍(T^x_{2π} | ρ₀)`.
    pub irr_torque: f64,
    /// `𝔍(σ^x_{2π} | ρ₀)`.
    pub irr_spin: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl TorquePair {
    pub fn sum(&self) -> f64 {
        self.irr_torque + self.irr_spin
    }
}

fn h_half(s: f64) -> f64 {
    binary_entropy((1.0 + s) / 2.0).expect("argument lies in [0, 1]")
}

/// Closed-form irreality pair for `ρ₀ = ½(𝟙 + r⃗·σ⃗)`.
pub fn torque_irreality_pair(r: &BlochVector) -> TorquePair {
    let radius = r.r().min(1.0);
    let mixed = h_half(radius);
    TorquePair {
        irr_torque: h_half(r.y().abs().min(1.0)) - mixed,
        irr_spin: h_half(r.x().abs().min(1.0)) - mixed,
        r: radius,
        theta: r.theta(),
        phi: r.phi(),
    }
}

/// The same pair through the matrix pipeline: the operators are built from
/// [`instantaneous_torque`] and [`pauli_heisenberg`] and the irrealities from
/// the entropies of the dephased state.
pub fn torque_irreality_pair_numeric(r: &BlochVector) -> Result<TorquePair> {
    let z = Vector3::z();
    let x = Vector3::x();
    let torque = dot(&x, &instantaneous_torque(&z, TAU)?);
    let spin = dot(&x, &pauli_heisenberg(&PrecessionConfig::new(z, TAU)?));
    let rho0 = bloch_to_state(r);
    Ok(TorquePair {
        irr_torque: irreality(&Observable::new(torque)?, &rho0)?.irreality,
        irr_spin: irreality(&Observable::new(spin)?, &rho0)?.irreality,
        r: r.r(),
        theta: r.theta(),
        phi: r.phi(),
    })
}

/// `ln 2 − H((1 + r)/2)`.
pub fn bound_rhs(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::OutOfDomain {
            what: "Bloch radius",
            value: r,
        });
    }
    Ok(LN_2 - h_half(r))
}

/// Bloch vector `ν⃗₁ = (r̂₁ − ẑ)/(1 − ẑ·r̂₁)` of `Λ` for the `a = −1`
/// projector along `ẑ` and a pure `ρ_{t₁}`, with its norm `1/|sin(θ/2)|`.
pub fn bloch_lambda_nu(r_hat: &Vector3<f64>) -> Result<(Vector3<f64>, f64)> {
    let r_hat = unit_axis(r_hat)?;
    let diff = r_hat - Vector3::z();
    // 1 − ẑ·r̂ = ‖r̂ − ẑ‖²/2 for unit r̂, without the cancellation near θ = 0.
    let dist = diff.norm();
    if dist <= f64::EPSILON {
        return Err(Error::LambdaPole);
    }
    Ok((diff * (2.0 / (dist * dist)), 2.0 / dist))
}

/// One row of the Figure-1 table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Record {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub irr_spin: f64,
    pub irr_torque: f64,
    pub bound_rhs: f64,
    /// Analytic `θ = π/2` boundary point rather than a random sample.
    pub is_curve: bool,
}

impl Figure1Record {
    fn from_pair(pair: &TorquePair, r: f64, bound: f64, is_curve: bool) -> Self {
        Self {
            r,
            theta: pair.theta,
            phi: pair.phi,
            irr_spin: pair.irr_spin,
            irr_torque: pair.irr_torque,
            bound_rhs: bound,
            is_curve,
        }
    }

    /// `𝔍_torque + 𝔍_spin − bound`.
    pub fn slack(&self) -> f64 {
        self.irr_torque + self.irr_spin - self.bound_rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandMinimum {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub sum: f64,
    pub bound_rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Scan {
    pub records: Vec<Figure1Record>,
}

impl Figure1Scan {
    pub fn scatter(&self) -> impl Iterator<Item = &Figure1Record> {
        self.records.iter().filter(|r| !r.is_curve)
    }

    pub fn curves(&self) -> impl Iterator<Item = &Figure1Record> {
        self.records.iter().filter(|r| r.is_curve)
    }

    pub fn min_slack(&self) -> f64 {
        self.records
            .iter()
            .map(Figure1Record::slack)
            .fold(f64::INFINITY, f64::min)
    }

    /// First record whose slack falls below `-tolerance`.
    pub fn first_violation(&self, tolerance: f64) -> Option<&Figure1Record> {
        self.records.iter().find(|r| r.slack() < -tolerance)
    }

    /// Smallest scatter sum per band, in band order.
    pub fn band_minima(&self) -> Vec<BandMinimum> {
        let mut out: Vec<BandMinimum> = Vec::new();
        for rec in self.scatter() {
            let sum = rec.irr_spin + rec.irr_torque;
            match out.iter_mut().find(|b| b.r == rec.r) {
                Some(b) if sum < b.sum => {
                    *b = BandMinimum {
                        r: rec.r,
                        theta: rec.theta,
                        phi: rec.phi,
                        sum,
                        bound_rhs: rec.bound_rhs,
                    }
                }
                Some(_) => {}
                None => out.push(BandMinimum {
                    r: rec.r,
                    theta: rec.theta,
                    phi: rec.phi,
                    sum,
                    bound_rhs: rec.bound_rhs,
                }),
            }
        }
        out
    }
}

/// RNG for sample `index` of band `band`: stream `band` of the ChaCha8
/// generator seeded with `seed`, positioned four words per sample.
fn row_rng(seed: u64, band: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(band as u64);
    rng.set_word_pos(4 * index as u128);
    rng
}

/// `n` random `(θ, φ)` samples per radius plus the analytic `θ = π/2`
/// boundary at [`CURVE_POINTS`] azimuths.
///
/// Records are ordered band by band: scatter rows, then the curve. The result
/// does not depend on the number of worker threads.
pub fn figure1_scan(r_values: &[f64], n: usize, seed: u64) -> Result<Figure1Scan> {
    let bounds = r_values
        .iter()
        .map(|&r| bound_rhs(r))
        .collect::<Result<Vec<_>>>()?;
    let mut records = Vec::with_capacity(r_values.len() * (n + CURVE_POINTS));
    for (band, (&r, &bound)) in r_values.iter().zip(&bounds).enumerate() {
        let scatter = (0..n)
            .into_par_iter()
            .map(|i| {
                let v = sample_bloch_vector(&mut row_rng(seed, band, i), r)?;
                Ok(Figure1Record::from_pair(
                    &torque_irreality_pair(&v),
                    r,
                    bound,
                    false,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        records.extend(scatter);
        for j in 0..CURVE_POINTS {
            let phi = TAU * j as f64 / CURVE_POINTS as f64;
            let v = BlochVector::from_spherical(r, FRAC_PI_2, phi)?;
            let mut pair = torque_irreality_pair(&v);
            pair.theta = FRAC_PI_2;
            pair.phi = phi;
            records.push(Figure1Record::from_pair(&pair, r, bound, true));
        }
    }
    Ok(Figure1Scan { records })
}
