use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("triangle {0:?} repeats a vertex")]
    DegenerateTriangle([usize; 3]),
    #[error("arrangement needs at least one vertex")]
    EmptyVertexSet,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("substitution matrix is singular")]
    Singular,
    #[error("{what} exceeds the configured cap of {cap}")]
    TooLarge { what: &'static str, cap: usize },
    #[error("polynomial is not a homogeneous cubic")]
    NotCubic,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("candidate invariant is zero")]
    ZeroCandidate,
    #[error("arrangement has no black circle")]
    NoBlackCircle,
    #[error("size parameter {n} out of range for {kind}")]
    SizeOutOfRange { kind: &'static str, n: usize },
    #[error("constrained subspace is not closed under the bracket")]
    NotClosed,
    #[error("record schema version {found} does not match {expected}")]
    SchemaMismatch { expected: u32, found: u32 },
    #[error("corrupt record: {0}")]
    CorruptRecord(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
