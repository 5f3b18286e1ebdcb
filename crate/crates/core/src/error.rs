use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: wrong dimensions, ragged rows, bad JSON shape.
    #[error("schema error: {0}")]
    Schema(String),

    #[error("pairing b is singular; Y -> X^dual is not injective")]
    SingularPairing,

    #[error("zero vector has no primitive multiple")]
    ZeroVector,

    #[error("scale factor must be a positive integer, got {0}")]
    InvalidScale(String),

    #[error("unsupported toric rank {0}; only ranks 0, 1 and 2 are handled")]
    UnsupportedRank(usize),

    #[error("default a_basis needs even diagonal of M, but M[{index}][{index}] = {value}")]
    OddDiagonal { index: usize, value: String },

    #[error("degeneration data fails axioms: {}", .0.join(", "))]
    AxiomFailed(Vec<String>),

    #[error("degeneration data is not H-invariant: a(-y) != a(y)")]
    NotHInvariant,

    #[error("pairing b is not even; the 2-torsion of A is not constant")]
    OddData,

    #[error("window radius {window} is below the safe bound {safe}")]
    WindowTooSmall { window: u64, safe: u64 },

    #[error("fan is not certified: {0}")]
    UncertifiedFan(String),

    #[error("lattice coordinate does not fit in 64 bits")]
    CoordinateOverflow,

    #[error("dual complex has the wrong shape: {0}")]
    ShapeMismatch(String),

    #[error("independent routes disagree: {0}")]
    Inconsistent(String),

    #[error("operator is not unipotent")]
    NotUnipotent,

    #[error("operator is not nilpotent")]
    NotNilpotent,

    #[error("nilpotent operator does not square to zero")]
    BadSquare,

    #[error("nilpotency index {0} does not correspond to a Kulikov type")]
    InvalidIndex(usize),

    #[error("wedge square of the operator is not unipotent")]
    HypothesisFailed,

    #[error("twist character is not multiplicative on the sample")]
    TwistNotMultiplicative,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is singular")]
    SingularMatrix,
}
