use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid table of dimensions: {0}")]
    InvalidTable(String),
    #[error("invalid globular set: {0}")]
    InvalidGlobularSet(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("matching condition fails at gluing {k} (dimension {dim})")]
    Matching { k: usize, dim: usize },
    #[error("ill-typed term: {0}")]
    IllTyped(String),
    #[error("inadmissible pair: {0}")]
    Inadmissible(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("dimension {dim} exceeds the truncation {truncation}")]
    Truncation { dim: usize, truncation: usize },
    #[error("tower functor violates the {side} equation at `{name}`")]
    FunctorEquation { name: String, side: &'static str },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("cell tuple outside the fiber product: {0}")]
    NotInFiberProduct(String),
    #[error("generator `{0}` has no interpretation in this model")]
    Uninterpreted(String),
    #[error("filler policy fails at `{name}` on input {witness:?}: source and target differ")]
    FillerPolicy { name: String, witness: Vec<usize> },
    #[error("law violation: {0}")]
    LawViolation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
