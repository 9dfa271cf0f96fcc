use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("maximal faces have different sizes")]
    MixedDimensions,
    #[error("complex needs at least one nonempty maximal face")]
    EmptyComplex,
    #[error("face {0:?} repeats a vertex")]
    RepeatedVertex(Vec<u32>),
    #[error("face {0:?} is not in the complex")]
    FaceNotInComplex(Vec<u32>),
    #[error("face {0:?} is top-dimensional")]
    TopDimensionalFace(Vec<u32>),
    #[error("dimension {0} is out of range")]
    DimensionOutOfRange(i64),
    #[error("coboundary is not defined in dimension {0} for these coefficients")]
    DimensionTooHigh(i32),
    #[error("cochains live on different bases")]
    BaseMismatch,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cochain is not a coboundary")]
    NotACoboundary,
    #[error("local witness around core {0:?} failed")]
    LocalWitnessFailed(Vec<u32>),
    #[error("core {0:?} is not contained in face {1:?}")]
    CoreNotInFace(Vec<u32>, Vec<u32>),
    #[error("{0:?} is not an edge")]
    NotAnEdge(Vec<u32>),
    #[error("walk is not a simple cycle: {0}")]
    NotACycle(String),
    #[error("cover is not genuine")]
    NotGenuine,
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("gamma must be positive")]
    NonpositiveGamma,
    #[error("no face of the required dimension contains {0:?}")]
    NoContainingFace(Vec<u32>),
    #[error("precondition unsatisfiable: {0}")]
    PreconditionUnsatisfiable(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown report format {0:?}")]
    UnknownFormat(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidInput(e.to_string())
    }
}
