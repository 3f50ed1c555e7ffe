//! Random instances for sweeps and property checks. All samplers take the
//! caller's RNG.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{c64, hermitian_part, CMatrix};
use super::state::{DensityMatrix, Observable};

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c64(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng))
}

/// GUE-like Hermitian matrix `(G + G†)/2`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    hermitian_part(&ginibre(rng, dim))
}

/// Haar unitary from the phase-corrected QR factorization of a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let qr = ginibre(rng, dim).qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            c64(1.0, 0.0)
        };
        for row in 0..dim {
            q[(row, k)] *= phase;
        }
    }
    q
}

/// Ginibre-induced mixed state `GG†/Tr(GG†)`.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let g = ginibre(rng, dim);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(hermitian_part(&m) * c64(1.0 / tr, 0.0)).expect("GG† is a valid state")
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let psi = DVector::from_fn(dim, |_, _| gaussian_complex(rng));
    DensityMatrix::pure(&psi).expect("Gaussian vectors are nonzero")
}

/// Random Hermitian observable, generically nondegenerate.
pub fn random_observable<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Observable {
    Observable::new(random_hermitian(rng, dim)).expect("Hermitian by construction")
}

/// Observable with the given spectrum in a Haar-random eigenbasis.
pub fn random_observable_with_spectrum<R: Rng + ?Sized>(rng: &mut R, values: &[f64]) -> Observable {
    let u = random_unitary(rng, values.len());
    Observable::from_eigensystem(values, &u).expect("unitary eigenbasis")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::matrix::{identity, max_distance};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 1..=5 {
            let u = random_unitary(&mut rng, d);
            assert!(max_distance(&(u.adjoint() * &u), &identity(d)) < 1e-12);
        }
    }

    #[test]
    fn prescribed_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_observable_with_spectrum(&mut rng, &[1.0, -1.0]);
        let ev = a.eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }
}
