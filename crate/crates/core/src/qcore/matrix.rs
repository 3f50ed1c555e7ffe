use nalgebra::DMatrix;
use num_complex::Complex64;

use super::state::Axis;

/// Dense complex matrix used for every operator in the crate.
pub type CMatrix = DMatrix<Complex64>;

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn pauli(axis: Axis) -> CMatrix {
    let (o, z) = (c64(1.0, 0.0), c64(0.0, 0.0));
    match axis {
        Axis::X => CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        Axis::Y => CMatrix::from_row_slice(2, 2, &[z, c64(0.0, -1.0), c64(0.0, 1.0), z]),
        Axis::Z => CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// `(σ_x, σ_y, σ_z)`.
pub fn pauli_vector() -> [CMatrix; 3] {
    [pauli(Axis::X), pauli(Axis::Y), pauli(Axis::Z)]
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

/// `max |M − M†|`; infinite for non-square input.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs(&(m - m.adjoint()))
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c64(0.5, 0.0)
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}
