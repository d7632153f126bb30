use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register layout t={t}, ell={ell} is invalid: {reason}")]
    InvalidLayout {
        t: usize,
        ell: usize,
        reason: &'static str,
    },

    #[error("capacity exceeded: {requested} qubits requested, maximum is {max}")]
    CapacityExceeded { requested: usize, max: usize },

    #[error("value {value} does not fit a {width}-qubit register")]
    RegisterRange { value: u64, width: usize },

    #[error("qubit index {index} out of range for a {qubits}-qubit state")]
    QubitRange { index: usize, qubits: usize },

    #[error("control and target must differ (both are qubit {0})")]
    SameQubit(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("modulus must be at least 2, got {0}")]
    Modulus(u64),

    #[error("gcd({x}, {n}) = {gcd} != 1")]
    NotCoprime { x: u64, n: u64, gcd: u64 },

    #[error("modulus {n} does not fit a {ell}-qubit register")]
    ModulusTooWide { n: u64, ell: usize },

    #[error("base {x} must satisfy 1 <= x < {n}")]
    InvalidBase { x: u64, n: u64 },

    #[error("{0} is prime and has no nontrivial factors")]
    PrimeModulus(u64),

    #[error("{0} cannot be factored (must be at least 4)")]
    TooSmall(u64),

    #[error("transform size {0} must be a power of two no larger than 4096")]
    TransformSize(usize),

    #[error("denominator must be positive")]
    ZeroDenominator,

    #[error("internal invariant violated: {0}")]
    Invariant(&'static str),
}
