use thiserror::Error;

use crate::fan::FaithfulnessReport;
use crate::flat::FlatViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the library.
///
/// Variants fall into four families which the CLI maps onto exit codes:
/// malformed input, validation failures, cap violations and
/// cross-path mismatches. See [`Error::kind`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate atom label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid atom label `{0}`")]
    InvalidLabel(String),
    #[error("unknown atom label `{0}`")]
    UnknownLabel(String),
    #[error("malformed sum `{text}` at position {pos}: {reason}")]
    MalformedSum {
        text: String,
        pos: usize,
        reason: String,
    },
    #[error("the zero vector is not a formal sum")]
    ZeroSum,
    #[error("cannot sum an empty set of vectors")]
    EmptySum,
    #[error("vector has length {got}, ground set has {expected} atoms")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ground sets differ")]
    GroundMismatch,

    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("vertex {0} is not an atom")]
    NonAtomicVertex(String),
    #[error("hypergraph is not atomic: singleton {{{0}}} is missing")]
    NotAtomic(String),
    #[error("not a building set: {0}")]
    InvalidBuildingSet(String),
    #[error("not a flat building set: {0}")]
    InvalidFlatBuildingSet(FlatViolation),
    #[error("basis {0} is linearly dependent")]
    DependentBasis(String),
    #[error("complex is not faithfully realized: {}", .0.describe())]
    NotFaithful(Box<FaithfulnessReport>),
    #[error("blowup at {face} collides with existing vertex {vertex}")]
    VertexCollision { face: String, vertex: String },
    #[error("edge {0} is not a face of the host complex")]
    EdgeNotFace(String),
    #[error("literal element mismatch: {0}")]
    Literal(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("level {index}: {source}")]
    Level { index: usize, source: Box<Error> },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("paths disagree: {0}")]
    Mismatch(String),
}

/// Coarse classification used for process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Cap,
    Mismatch,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::CapExceeded(_) => ErrorKind::Cap,
            Error::Mismatch(_) => ErrorKind::Mismatch,
            Error::Level { source, .. } => source.kind(),
            _ => ErrorKind::Validation,
        }
    }

    pub(crate) fn at_level(self, index: usize) -> Error {
        Error::Level {
            index,
            source: Box::new(self),
        }
    }
}
