//! Numerical tolerances shared across the crate.

/// Hermiticity, trace and round-trip checks on density matrices.
pub const STATE_EXACT: f64 = 1e-12;

/// Hermiticity accepted for generic input operators.
pub const HERMITIAN_INPUT: f64 = 1e-10;

/// Eigenvalues of a nominal density matrix in `[-CLAMP_NEGATIVE, 0)` are
/// treated as zero. Anything below is an invariant violation.
pub const CLAMP_NEGATIVE: f64 = 1e-10;

/// Default grouping tolerance for degenerate eigenvalues.
pub const GROUP: f64 = 1e-9;

/// Marginal probability below which a measurement branch is dropped.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-12;

/// `η` eigenvalues below this are treated as outside its support.
pub const SUPPORT_EIGENVALUE: f64 = 1e-12;

/// `ρ` weight on the kernel of `η` above this makes `S(ρ‖η)` infinite.
pub const SUPPORT_WEIGHT: f64 = 1e-10;

/// Max-norm distance under which `ρ` and `Φ_A(ρ)` are considered equal.
pub const REALITY: f64 = 1e-8;

/// Kraus completeness check.
pub const KRAUS: f64 = 1e-10;
