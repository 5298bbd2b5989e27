use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Gram matrix is not square and symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite (leading minor {index} is {minor})")]
    NotPositiveDefinite { index: usize, minor: i128 },
    #[error("Gram matrix is not positive semi-definite (principal minor {minor})")]
    NotPositiveSemidefinite { minor: i128 },
    #[error("lattice file: {0}")]
    Format(String),
    #[error("target rank {needed} exceeds candidate rank {rank}")]
    RankTooSmall { needed: usize, rank: usize },
    #[error("search bound exhausted: {0}")]
    BoundsExhausted(String),
    #[error("input lattice is not primitive: {0}")]
    NotPrimitiveInput(String),
    #[error("{a} and {b} lie in the same square class")]
    SameSquareClass { a: i128, b: i128 },
    #[error("invalid alpha {0}: congruence or symbol conditions fail")]
    InvalidAlpha(i128),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
