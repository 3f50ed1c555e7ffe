use super::spectral::hermitian_eigen;
use super::state::DensityMatrix;
use crate::{tol, Error, Result};

/// `−Σ p ln p` over a spectrum, with `0 ln 0 = 0` and tiny negatives clamped.
pub fn entropy_of_spectrum(values: &[f64]) -> f64 {
    values
        .iter()
        .map(|&p| if p > 0.0 { -p * p.ln() } else { 0.0 })
        .sum()
}

/// Von Neumann entropy `−Tr(ρ ln ρ)` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues()).max(0.0)
}

/// Relative entropy `Tr[ρ(ln ρ − ln η)]` in nats.
///
/// Returns `f64::INFINITY` when `ρ` carries weight above `1e-10` on an
/// eigenvector of `η` whose eigenvalue is below `1e-12`.
pub fn relative_entropy(rho: &DensityMatrix, eta: &DensityMatrix) -> Result<f64> {
    if rho.dim() != eta.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: eta.dim(),
        });
    }
    let (eta_values, eta_vectors) = hermitian_eigen(eta.matrix());
    let mut cross = 0.0;
    for (j, &mu) in eta_values.iter().enumerate() {
        let v = eta_vectors.column(j);
        let weight = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        if mu < tol::SUPPORT_EIGENVALUE {
            if weight > tol::SUPPORT_WEIGHT {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += weight * mu.ln();
    }
    let value = -von_neumann_entropy(rho) - cross;
    // Klein's inequality; rounding can push exact zeros slightly negative.
    Ok(value.max(0.0))
}

/// `H(u) = −u ln u − (1−u) ln(1−u)` in nats.
pub fn binary_entropy(u: f64) -> Result<f64> {
    if !(-tol::STATE_EXACT..=1.0 + tol::STATE_EXACT).contains(&u) {
        return Err(Error::OutOfDomain {
            what: "binary entropy argument",
            value: u,
        });
    }
    let u = u.clamp(0.0, 1.0);
    Ok(entropy_of_spectrum(&[u, 1.0 - u]))
}
