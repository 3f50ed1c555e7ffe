//! Complex Hermitian linear algebra, states, observables and entropies for
//! small dimensions.

mod bloch;
mod entropy;
mod matrix;
pub mod random;
mod spectral;
mod state;

pub use bloch::{
    bloch_to_state, random_bloch_states, random_bloch_states_with, sample_bloch_vector,
    state_to_bloch, BlochVector,
};
pub use entropy::{binary_entropy, entropy_of_spectrum, relative_entropy, von_neumann_entropy};
pub use matrix::{
    anticommutator, c64, commutator, hermitian_deviation, hermitian_part, identity, max_abs,
    max_distance, pauli, pauli_vector, CMatrix,
};
pub use spectral::{hermitian_eigen, reconstruct, spectral_decompose, SpectralComponent};
pub use state::{Axis, DensityMatrix, Observable};
