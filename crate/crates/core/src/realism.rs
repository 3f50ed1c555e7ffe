//! Dephasing maps and the irreality quantifier.
//!
//! `Φ_A(ρ) = Σ_a α_a ρ α_a` is the nonselective projective measurement of
//! `A`. A preparation makes `A` an element of reality when `ρ = Φ_A(ρ)`, and
//! the irreality `𝔍(A|ρ) = S(Φ_A(ρ)) − S(ρ) = min_σ S(ρ‖Φ_A(σ))` measures the
//! entropic distance from that set.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::qcore::random::random_density_matrix;
use crate::qcore::{
    hermitian_part, max_distance, relative_entropy, von_neumann_entropy, Axis, CMatrix,
    DensityMatrix, Observable,
};
use crate::{tol, Error, Result};

fn check_dims(a: &Observable, rho: &DensityMatrix) -> Result<()> {
    if a.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: rho.dim(),
        });
    }
    Ok(())
}

pub(crate) fn dephase_matrix(a: &Observable, m: &CMatrix) -> CMatrix {
    let dim = m.nrows();
    let sum = a
        .spectrum()
        .iter()
        .fold(CMatrix::zeros(dim, dim), |acc, c| {
            acc + &c.projector * m * &c.projector
        });
    hermitian_part(&sum)
}

/// `Φ_A(ρ)`.
pub fn dephase(a: &Observable, rho: &DensityMatrix) -> Result<DensityMatrix> {
    check_dims(a, rho)?;
    DensityMatrix::new(dephase_matrix(a, rho.matrix()))
}

/// `ρ = Φ_A(ρ)` within a max-norm distance of `1e-8`.
pub fn is_element_of_reality(a: &Observable, rho: &DensityMatrix) -> Result<bool> {
    check_dims(a, rho)?;
    Ok(max_distance(rho.matrix(), &dephase_matrix(a, rho.matrix())) <= tol::REALITY)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrrealityReport {
    /// `𝔍(A|ρ)` in nats.
    pub irreality: f64,
    /// `S(Φ_A(ρ))`.
    pub entropy_dephased: f64,
    /// `S(ρ)`.
    pub entropy_state: f64,
}

/// `𝔍(A|ρ)` from the entropy-difference form.
pub fn irreality(a: &Observable, rho: &DensityMatrix) -> Result<IrrealityReport> {
    let dephased = dephase(a, rho)?;
    let entropy_dephased = von_neumann_entropy(&dephased);
    let entropy_state = von_neumann_entropy(rho);
    Ok(IrrealityReport {
        irreality: entropy_dephased - entropy_state,
        entropy_dephased,
        entropy_state,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinFormReport {
    pub irreality: f64,
    /// `S(ρ‖Φ_A(ρ))`.
    pub relative_at_minimizer: f64,
    /// `|S(ρ‖Φ_A(ρ)) − 𝔍(A|ρ)|`.
    pub identity_gap: f64,
    /// Smallest `S(ρ‖Φ_A(σ_i))` over the random candidates; may be infinite.
    pub min_sampled: f64,
    /// Candidates with `S(ρ‖Φ_A(σ_i)) < 𝔍 − 1e-10`.
    pub violations: usize,
    pub samples: usize,
}

impl MinFormReport {
    pub fn holds(&self, tolerance: f64) -> bool {
        self.identity_gap <= tolerance && self.violations == 0
    }
}

/// Checks `𝔍(A|ρ) = S(ρ‖Φ_A(ρ)) ≤ S(ρ‖Φ_A(σ))` against `n_samples`
/// Ginibre-random `σ` drawn from a ChaCha8 stream seeded with `seed`.
pub fn min_form_check(
    a: &Observable,
    rho: &DensityMatrix,
    n_samples: usize,
    seed: u64,
) -> Result<MinFormReport> {
    let candidates = {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n_samples)
            .map(|_| random_density_matrix(&mut rng, rho.dim()))
            .collect::<Vec<_>>()
    };
    min_form_check_against(a, rho, &candidates)
}

/// Same as [`min_form_check`] with caller-supplied candidates `σ_i`.
pub fn min_form_check_against(
    a: &Observable,
    rho: &DensityMatrix,
    candidates: &[DensityMatrix],
) -> Result<MinFormReport> {
    let report = irreality(a, rho)?;
    let at_minimizer = relative_entropy(rho, &dephase(a, rho)?)?;
    let mut min_sampled = f64::INFINITY;
    let mut violations = 0;
    for sigma in candidates {
        let value = relative_entropy(rho, &dephase(a, sigma)?)?;
        min_sampled = min_sampled.min(value);
        if value < report.irreality - 1e-10 {
            violations += 1;
        }
    }
    Ok(MinFormReport {
        irreality: report.irreality,
        relative_at_minimizer: at_minimizer,
        identity_gap: (at_minimizer - report.irreality).abs(),
        min_sampled,
        violations,
        samples: candidates.len(),
    })
}

/// Both sides of `S(Φ_A(ρ)) + S(Φ_B(ρ)) ≥ ln d + S(ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementarityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// The `(σ_x, σ_y)` entropic chain on a qubit.
pub fn complementarity_bound_check(rho: &DensityMatrix) -> Result<ComplementarityReport> {
    if rho.dim() != 2 {
        return Err(Error::NotQubit { dim: rho.dim() });
    }
    complementarity_bound_check_pair(
        &Observable::pauli(Axis::X),
        &Observable::pauli(Axis::Y),
        rho,
    )
}

/// General pair version: requires `Φ_B ∘ Φ_A(ρ) = 𝟙/d`, under which the
/// monotonicity of relative entropy under `Φ_B` gives the bound.
pub fn complementarity_bound_check_pair(
    a: &Observable,
    b: &Observable,
    rho: &DensityMatrix,
) -> Result<ComplementarityReport> {
    check_dims(a, rho)?;
    check_dims(b, rho)?;
    let dim = rho.dim();
    let phi_a = dephase(a, rho)?;
    let both = dephase(b, &phi_a)?;
    let deviation = both.max_distance(&DensityMatrix::maximally_mixed(dim));
    if deviation > tol::REALITY {
        return Err(Error::NotComplementary { deviation });
    }
    let lhs = von_neumann_entropy(&phi_a) + von_neumann_entropy(&dephase(b, rho)?);
    let rhs = (dim as f64).ln() + von_neumann_entropy(rho);
    Ok(ComplementarityReport {
        lhs,
        rhs,
        slack: lhs - rhs,
    })
}
