//! Two-time observables for finite-dimensional quantum systems.
//!
//! The crate covers three related ideas:
//!
//! * sequential two-point measurement (TPM) statistics versus the symmetrized
//!   Heisenberg correlator `Tr(½{A(t₁), B(t₂)} ρ₀)`, including the conditional
//!   operator `Λ` that the Heisenberg form implicitly substitutes for the
//!   post-measurement state;
//! * the irreality `𝔍(A|ρ) = S(Φ_A(ρ)) − S(ρ)`, which vanishes exactly when a
//!   nonselective measurement of `A` leaves `ρ` unchanged;
//! * closed-form spin-1/2 precession and torque machinery, and free-particle
//!   Gaussian displacement statistics.
//!
//! All quantities are dimensionless with `ħ = 1`; entropies are in nats.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlators;
pub mod dynamics;
mod error;
pub mod gaussian;
pub mod qcore;
pub mod realism;
pub mod spinlab;
pub mod tol;

pub use error::{Error, Result};
pub use qcore::{
    binary_entropy, bloch_to_state, random_bloch_states, relative_entropy, spectral_decompose,
    state_to_bloch, von_neumann_entropy, Axis, BlochVector, CMatrix, DensityMatrix, Observable,
    SpectralComponent,
};
