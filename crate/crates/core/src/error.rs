use crate::exactlin::LinError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("non-admissible relations: path `{0}` survives at the length bound")]
    NonAdmissible(String),
    #[error("maximal path length must be at least 1")]
    ZeroMaxLen,
    #[error("morphisms are not composable: {0}")]
    Composability(String),
    #[error("relation terms do not share endpoints")]
    MixedEndpoints,
    #[error("objects live over different categories")]
    CategoryMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("criteria mismatch: {0}")]
    CriteriaMismatch(String),
    #[error("empty projective bundle")]
    EmptyBundle,
    #[error(transparent)]
    Lin(#[from] LinError),
}

pub type Result<T> = std::result::Result<T, Error>;
