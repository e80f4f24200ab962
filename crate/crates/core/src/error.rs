use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("minimal polynomial for `{symbol}` is not monic")]
    NonMonic { symbol: String },
    #[error("minimal polynomial for `{symbol}` has degree {degree}; at least 2 is required")]
    DegreeTooSmall { symbol: String, degree: usize },
    #[error("unknown generator `{0}`")]
    UnknownSymbol(String),
    #[error("generator `{0}` is defined twice")]
    DuplicateSymbol(String),
    #[error("base marker {marker} exceeds the number of levels ({levels})")]
    BaseMarkerOutOfRange { marker: usize, levels: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-invertible element (the minimal polynomials do not define a field)")]
    NonInvertible,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("unsupported shape: {0}")]
    Unsupported(String),
    #[error("homogeneity hypothesis fails: {0}")]
    HomogeneityViolated(String),
    #[error("subspace is not a point of the invariant-generated Grassmannian")]
    NotAGPoint,
    #[error("subspace is not invariant under the algebra")]
    NotInvariant,
    #[error("instance too large: {count} subspaces exceed the limit {limit}")]
    TooLarge { count: u128, limit: u128 },
    #[error("malformed multiset: {0}")]
    MalformedMultiset(String),
    #[error("no separating element found within the scan budget")]
    NoSeparatingElement,
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error("two-sided structure failed validation: {0}")]
    Invalid(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
