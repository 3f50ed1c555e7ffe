use nalgebra::DVector;
use num_complex::Complex64;

use super::matrix::{
    c64, hermitian_deviation, hermitian_part, identity, max_distance, pauli, CMatrix,
};
use super::spectral::{hermitian_eigen, reconstruct, spectral_decompose, SpectralComponent};
use crate::{tol, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates all three state invariants. The stored matrix is the exact
    /// Hermitian part of the input.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let deviation = hermitian_deviation(&matrix);
        if deviation > tol::STATE_EXACT {
            return Err(Error::NotHermitian { deviation });
        }
        let matrix = hermitian_part(&matrix);
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::STATE_EXACT {
            return Err(Error::NotUnitTrace { trace });
        }
        let (values, _) = hermitian_eigen(&matrix);
        let min_eigenvalue = values[0];
        if min_eigenvalue < -tol::CLAMP_NEGATIVE {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    /// `|ψ⟩⟨ψ|` for a nonzero vector, normalized here.
    pub fn pure(psi: &DVector<Complex64>) -> Result<Self> {
        let norm = psi.norm();
        if !(norm > 0.0) {
            return Err(Error::OutOfDomain {
                what: "state vector norm",
                value: norm,
            });
        }
        let psi = psi.unscale(norm);
        Self::new(&psi * psi.adjoint())
    }

    /// `|k⟩⟨k|` in the computational basis.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::IndexOutOfRange { index: k, len: dim });
        }
        let mut m = CMatrix::zeros(dim, dim);
        m[(k, k)] = c64(1.0, 0.0);
        Ok(Self { matrix: m })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: identity(dim) * c64(1.0 / dim as f64, 0.0),
        }
    }

    /// Convex combination `Σ w_i ρ_i`; weights are normalized.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::OutOfDomain {
            what: "mixture size",
            value: 0.0,
        })?;
        let dim = first.1.dim();
        let mut total = 0.0;
        let mut m = CMatrix::zeros(dim, dim);
        for &(w, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: rho.dim(),
                });
            }
            if !(w >= 0.0) {
                return Err(Error::OutOfDomain {
                    what: "mixture weight",
                    value: w,
                });
            }
            total += w;
            m += &rho.matrix * c64(w, 0.0);
        }
        if !(total > 0.0) {
            return Err(Error::OutOfDomain {
                what: "mixture total weight",
                value: total,
            });
        }
        Self::new(m * c64(1.0 / total, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Ascending eigenvalues with `[-1e-10, 0)` clamped to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (values, _) = hermitian_eigen(&self.matrix);
        values.into_iter().map(|v| v.max(0.0)).collect()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// `Re Tr(O ρ)`.
    pub fn expectation(&self, op: &CMatrix) -> f64 {
        (op * &self.matrix).trace().re
    }

    pub fn max_distance(&self, other: &DensityMatrix) -> f64 {
        max_distance(&self.matrix, &other.matrix)
    }
}

/// A Hermitian matrix together with its grouped spectral decomposition
/// `A = Σ_a a α_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: CMatrix,
    spectrum: Vec<SpectralComponent>,
}

impl Observable {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, tol::GROUP)
    }

    pub fn with_tolerance(matrix: CMatrix, group_tol: f64) -> Result<Self> {
        let spectrum = spectral_decompose(&matrix, group_tol)?;
        Ok(Self {
            matrix: hermitian_part(&matrix),
            spectrum,
        })
    }

    /// Observable with prescribed eigenvalues on the columns of a unitary.
    pub fn from_eigensystem(values: &[f64], basis: &CMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::NotSquare {
                rows: basis.nrows(),
                cols: basis.ncols(),
            });
        }
        if values.len() != basis.ncols() {
            return Err(Error::DimensionMismatch {
                expected: basis.ncols(),
                found: values.len(),
            });
        }
        let diag = CMatrix::from_diagonal(&DVector::from_iterator(
            values.len(),
            values.iter().map(|&v| c64(v, 0.0)),
        ));
        Self::new(basis * diag * basis.adjoint())
    }

    /// Pauli matrix along `axis`, spectrum `{−1, +1}`.
    pub fn pauli(axis: Axis) -> Self {
        Self::new(pauli(axis)).expect("Pauli matrices are Hermitian")
    }

    /// Spin-1/2 component `σ/2` (ħ = 1).
    pub fn spin_half(axis: Axis) -> Self {
        Self::new(pauli(axis) * c64(0.5, 0.0)).expect("Pauli matrices are Hermitian")
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &[SpectralComponent] {
        &self.spectrum
    }

    /// Distinct eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.spectrum.iter().map(|c| c.value).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.spectrum.len() == self.dim()
    }

    /// `max |A − Σ a α_a|`.
    pub fn reconstruction_error(&self) -> f64 {
        max_distance(&reconstruct(&self.spectrum), &self.matrix)
    }

    /// `U† A U`, carrying the spectrum along without re-diagonalizing.
    pub(crate) fn conjugated(&self, u: &CMatrix) -> Self {
        let ud = u.adjoint();
        let conj = |m: &CMatrix| hermitian_part(&(&ud * m * u));
        Self {
            matrix: conj(&self.matrix),
            spectrum: self
                .spectrum
                .iter()
                .map(|c| SpectralComponent {
                    value: c.value,
                    projector: conj(&c.projector),
                })
                .collect(),
        }
    }
}
