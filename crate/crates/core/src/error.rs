use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M†| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },

    #[error("density matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires a qubit, got dimension {dim}")]
    NotQubit { dim: usize },

    #[error("Bloch vector norm {norm} exceeds 1")]
    InvalidBloch { norm: f64 },

    #[error("direction vector has norm {norm}, expected a unit vector")]
    NonUnitAxis { norm: f64 },

    #[error("{what} = {value} is outside its domain")]
    OutOfDomain { what: &'static str, value: f64 },

    #[error("times must satisfy t1 < t2, got t1 = {t1}, t2 = {t2}")]
    TimeOrdering { t1: f64, t2: f64 },

    #[error(
        "outcome probability {probability:.3e} vanishes; the conditional operator is undefined"
    )]
    UnconditionedOutcome { probability: f64 },

    #[error("operation requires a unitary channel family")]
    NonUnitaryChannel,

    #[error("Kraus operators are not trace preserving: max |ΣK†K - 1| = {deviation:.3e}")]
    NotTracePreserving { deviation: f64 },

    #[error("index {index} out of range for {len} distinct eigenvalues")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("operator is not an orthogonal projector: max |P² - P| = {deviation:.3e}")]
    NotProjector { deviation: f64 },

    #[error("direction coincides with +z: pole of the Bloch Λ map")]
    LambdaPole,

    #[error(
        "observables are not complementary on this state: max |Φ_B Φ_A(ρ) - 1/d| = {deviation:.3e}"
    )]
    NotComplementary { deviation: f64 },

    #[error("invalid Gaussian preparation: {reason}")]
    InvalidPreparation { reason: String },

    #[error("negative position variance {variance:.3e}: inconsistent covariance")]
    NegativeVariance { variance: f64 },
}
