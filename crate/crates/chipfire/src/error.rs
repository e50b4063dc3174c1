use crate::exact::{Int, Rational};
use crate::mmatrix::MMatrixFailure;

/// Errors shared by every module in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("L is singular")]
    SingularL,

    #[error("M is not an M-matrix ({reason})")]
    NotAnMMatrix { reason: MMatrixFailure },

    #[error("configuration is not a member of S+")]
    InvalidConfiguration,

    #[error("site index {site} out of range for {dim} sites")]
    IndexOutOfRange { site: usize, dim: usize },

    #[error("site {site} cannot fire: coordinate {site} of x - M*e_i would be {deficit}")]
    CannotFire { site: usize, deficit: Rational },

    #[error("firing script has a negative entry")]
    NegativeScript,

    #[error("stabilization exceeded {cap} firings")]
    IterationCapExceeded { cap: u64 },

    #[error("superstability search box has {volume} scripts, cap is {cap}")]
    BoxTooLarge { volume: Int, cap: u64 },

    #[error("energy ball search has {volume} scripts, cap is {cap}")]
    BallTooLarge { volume: Int, cap: u64 },

    #[error("|det L| = {det} exceeds cap {cap}")]
    DeterminantExceedsCap { det: Int, cap: u64 },

    #[error("unknown coset label for this pairing")]
    UnknownLabel,

    #[error("graph has a vertex with no directed path to the sink")]
    DisconnectedFromSink,

    #[error("complex has no facets")]
    EmptyComplex,

    #[error("facet list is invalid: {0}")]
    InvalidFacet(String),

    #[error("tree is not a spanning tree of the complex's 1-skeleton: {0}")]
    NotASpanningTree(String),

    #[error("graph is invalid: {0}")]
    InvalidGraph(String),
}

pub type Result<T> = std::result::Result<T, Error>;
