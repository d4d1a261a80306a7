use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("square root of zero requested")]
    ZeroInput,
    #[error("operation requires characteristic {expected}, field has characteristic {found}")]
    WrongCharacteristic { expected: u32, found: u32 },
    #[error("torus parameter must be nonzero")]
    ZeroTorusParameter,
    #[error("matrix is singular")]
    Singular,
    #[error("expected a {expected}x{expected} matrix, got {found}x{found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("matrix dimensions differ ({0} vs {1})")]
    ShapeMismatch(usize, usize),
    #[error("not in group")]
    NotInGroup,
    #[error("matrix is not in the unipotent subgroup")]
    NotInU,
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
