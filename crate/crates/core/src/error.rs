use thiserror::Error;

/// Errors raised across the library. Mathematical check failures are not
/// errors; they are reported as `false` in the corresponding report types.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field specification `{0}`")]
    InvalidField(String),
    #[error("no primitive {order}-th root of unity in {field}")]
    NoPrimitiveRoot { order: u64, field: String },
    #[error("elements or modules belong to different presentations")]
    PresentationMismatch,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("the leading coordinate alpha_1 is zero")]
    ZeroLeadingCoordinate,
    #[error("codimension {0} is odd; an even codimension is required")]
    OddCodimension(usize),
    #[error("element is not homogeneous with respect to total degree")]
    InhomogeneousElement,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("the generating element is zero")]
    ZeroElement,
    #[error("right multiplication is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("syzygy window is empty")]
    WindowEmpty,
    #[error("invalid chain step: {0}")]
    InvalidChainStep(String),
    #[error("the module is zero")]
    ZeroModule,
    #[error("radical computation requires characteristic 0, got characteristic {0}")]
    PositiveCharacteristic(u64),
    #[error("algebra has no two-sided unit")]
    NonUnitalInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("could not split the semisimple quotient into primitive idempotents: {0}")]
    IdempotentSplitting(String),
    #[error("no admissible alpha found: {0}")]
    NoAlphaFound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
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
