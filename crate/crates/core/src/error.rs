use thiserror::Error;

use crate::algebra::GenId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid rational literal `{0}` (expected `p` or `p/q`)")]
    Rational(String),
    #[error("invalid index literal `{0}` (expected an integer or `p/2`)")]
    HalfInt(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("`{spec}` has no generator family `{family}`")]
    UnknownFamily { spec: String, family: String },
    #[error("index of {gen} is off its family's lattice in `{spec}`")]
    OffLattice { spec: String, gen: GenId },
    #[error("window is empty: {0}")]
    EmptyWindow(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("`{name}` requires parameter `{param}`")]
    MissingParam { name: String, param: String },
    #[error("`{name}` does not take parameter `{param}`")]
    ExtraParam { name: String, param: String },
    #[error("module `{module}` is not defined over `{algebra}`")]
    UnsupportedPair { module: String, algebra: String },
    #[error("`{0}` is reserved but not implemented")]
    Reserved(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("operation needs a symmetric biderivation space")]
    NotSymmetric,
    #[error("spaces live over different unknown sets")]
    NamespaceMismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("vector has {got} columns, space has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}
