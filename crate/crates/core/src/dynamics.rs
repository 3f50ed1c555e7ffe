//! One-parameter channel families `φ_t` and their duals `φ*_t`.
//!
//! Unitary families are generated by a time-independent Hamiltonian
//! (`ħ = 1`): `φ*_t(ρ) = U_t ρ U_t†` and `φ_t(A) = U_t† A U_t` with
//! `U_t = exp(−iHt)`. The exponential is taken through the spectral
//! decomposition of `H`.
//!
//! The Heisenberg-picture operations are restricted to unitary families; the
//! manipulation behind the symmetrized correlator relies on `φ*_t = φ_{−t}`.
//! A fixed Kraus step is available for sequential-measurement simulations
//! only.

use nalgebra::{DVector, Vector3};

use crate::qcore::{
    c64, hermitian_deviation, hermitian_eigen, hermitian_part, identity, max_abs, pauli_vector,
    CMatrix, DensityMatrix, Observable,
};
use crate::{tol, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryFamily {
    hamiltonian: CMatrix,
    energies: Vec<f64>,
    eigenvectors: CMatrix,
}

impl UnitaryFamily {
    pub fn new(hamiltonian: CMatrix) -> Result<Self> {
        if !hamiltonian.is_square() {
            return Err(Error::NotSquare {
                rows: hamiltonian.nrows(),
                cols: hamiltonian.ncols(),
            });
        }
        let deviation = hermitian_deviation(&hamiltonian);
        if deviation > tol::HERMITIAN_INPUT {
            return Err(Error::NotHermitian { deviation });
        }
        let hamiltonian = hermitian_part(&hamiltonian);
        let (energies, eigenvectors) = hermitian_eigen(&hamiltonian);
        Ok(Self {
            hamiltonian,
            energies,
            eigenvectors,
        })
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.hamiltonian
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.nrows()
    }

    /// `U_t = V exp(−iEt) V†`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        let phases = DVector::from_iterator(
            self.energies.len(),
            self.energies.iter().map(|&e| c64(0.0, -e * t).exp()),
        );
        &self.eigenvectors * CMatrix::from_diagonal(&phases) * self.eigenvectors.adjoint()
    }
}

/// A single completely positive trace-preserving step `ρ ↦ Σ K ρ K†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausStep {
    operators: Vec<CMatrix>,
}

impl KrausStep {
    pub fn new(operators: Vec<CMatrix>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or(Error::NotTracePreserving { deviation: 1.0 })?;
        let dim = first.nrows();
        let mut completeness = CMatrix::zeros(dim, dim);
        for k in &operators {
            if k.nrows() != dim || k.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: k.nrows().max(k.ncols()),
                });
            }
            completeness += k.adjoint() * k;
        }
        let deviation = max_abs(&(completeness - identity(dim)));
        if deviation > tol::KRAUS {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self { operators })
    }

    pub fn dim(&self) -> usize {
        self.operators[0].nrows()
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    fn apply(&self, x: &CMatrix) -> CMatrix {
        self.operators
            .iter()
            .fold(CMatrix::zeros(x.nrows(), x.ncols()), |acc, k| {
                acc + k * x * k.adjoint()
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelFamily {
    Unitary(UnitaryFamily),
    /// Applies its Kraus set once for any `t > 0`; identity at `t = 0`.
    Kraus(KrausStep),
}

impl ChannelFamily {
    pub fn unitary(hamiltonian: CMatrix) -> Result<Self> {
        UnitaryFamily::new(hamiltonian).map(Self::Unitary)
    }

    /// `H = 0`.
    pub fn trivial(dim: usize) -> Self {
        Self::unitary(CMatrix::zeros(dim, dim)).expect("zero Hamiltonian")
    }

    /// Spin-1/2 precession `H = ω S_h` with `ω = 1`, so time is the phase `τ`.
    pub fn precession(h_hat: &Vector3<f64>) -> Result<Self> {
        let norm = h_hat.norm();
        if (norm - 1.0).abs() > tol::STATE_EXACT {
            return Err(Error::NonUnitAxis { norm });
        }
        let sigma = pauli_vector();
        let h = sigma
            .iter()
            .zip(h_hat.iter())
            .fold(CMatrix::zeros(2, 2), |acc, (s, &hi)| {
                acc + s * c64(0.5 * hi, 0.0)
            });
        Self::unitary(h)
    }

    pub fn kraus(operators: Vec<CMatrix>) -> Result<Self> {
        KrausStep::new(operators).map(Self::Kraus)
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Unitary(u) => u.dim(),
            Self::Kraus(k) => k.dim(),
        }
    }

    pub fn is_unitary(&self) -> bool {
        matches!(self, Self::Unitary(_))
    }

    pub fn as_unitary(&self) -> Result<&UnitaryFamily> {
        match self {
            Self::Unitary(u) => Ok(u),
            Self::Kraus(_) => Err(Error::NonUnitaryChannel),
        }
    }

    fn check_dim(&self, m: &CMatrix) -> Result<()> {
        if m.nrows() != self.dim() || m.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.nrows(),
            });
        }
        Ok(())
    }

    /// Schrödinger-picture map `φ*_t` on an arbitrary operator.
    pub fn schrodinger(&self, x: &CMatrix, t: f64) -> Result<CMatrix> {
        self.check_dim(x)?;
        match self {
            Self::Unitary(u) => {
                let ut = u.propagator(t);
                Ok(&ut * x * ut.adjoint())
            }
            Self::Kraus(k) => {
                if t < 0.0 {
                    Err(Error::OutOfDomain {
                        what: "Kraus step time",
                        value: t,
                    })
                } else if t == 0.0 {
                    Ok(x.clone())
                } else {
                    Ok(k.apply(x))
                }
            }
        }
    }

    /// Heisenberg-picture map `φ_t` on an arbitrary operator. Unitary only.
    pub fn heisenberg(&self, x: &CMatrix, t: f64) -> Result<CMatrix> {
        self.check_dim(x)?;
        let ut = self.as_unitary()?.propagator(t);
        Ok(ut.adjoint() * x * &ut)
    }
}

/// `ρ_t = φ*_t(ρ₀)`.
pub fn evolve_state(
    channel: &ChannelFamily,
    rho0: &DensityMatrix,
    t: f64,
) -> Result<DensityMatrix> {
    if rho0.dim() != channel.dim() {
        return Err(Error::DimensionMismatch {
            expected: channel.dim(),
            found: rho0.dim(),
        });
    }
    DensityMatrix::new(hermitian_part(&channel.schrodinger(rho0.matrix(), t)?))
}

/// `A(t) = φ_t(A)`; the spectrum is carried over unchanged.
pub fn evolve_observable(channel: &ChannelFamily, a: &Observable, t: f64) -> Result<Observable> {
    if a.dim() != channel.dim() {
        return Err(Error::DimensionMismatch {
            expected: channel.dim(),
            found: a.dim(),
        });
    }
    let ut = channel.as_unitary()?.propagator(t);
    Ok(a.conjugated(&ut))
}
