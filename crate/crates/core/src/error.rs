use thiserror::Error;

/// Errors shared by the lattice, reduction and oracle layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("too many points: got {0}, the theory covers at most 8")]
    TooManyPoints(usize),
    #[error("point index {0} out of range 1..=8")]
    IndexOutOfRange(usize),
    #[error("point indices must be distinct")]
    EqualIndices,
    #[error("class is not in standard form")]
    NotStandardForm,
    #[error("empty linear system")]
    EmptySystem,
    #[error("expected a set of 4 distinct point indices in 1..=8")]
    MalformedIndexSet,
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime too small: {0} (need p > 10^6)")]
    PrimeTooSmall(u64),
    #[error("prime {p} must exceed the degree {d}")]
    PrimeNotAboveDegree { p: u64, d: u64 },
    #[error("degenerate point configuration after {0} attempts")]
    DegenerateConfiguration(u32),
    #[error("point lies in the indeterminacy locus of the Cremona coordinate map")]
    Indeterminacy,
    #[error("curve level a={0} not supported by the membership oracle (a <= 2 only)")]
    UnsupportedCurveLevel(u64),
    #[error("kernel basis is empty")]
    EmptyKernel,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
