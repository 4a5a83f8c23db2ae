use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("FINITE_TYPE_REQUIRED: {0}")]
    FiniteTypeRequired(String),
    #[error("NOT_REFLECTION_SUBGROUP")]
    NotReflectionSubgroup,
    #[error("UNSUPPORTED_EXTENSION: {0}")]
    UnsupportedExtension(String),
    #[error("NOT_A_COMPLEX: {0}")]
    NotAComplex(String),
    #[error("CORRUPT_TABLE: {0}")]
    CorruptTable(String),
    #[error("NOT_APPLICABLE: {0}")]
    NotApplicable(String),
    #[error("NOT_INVOLUTION")]
    NotInvolution,
    #[error("REDUCIBLE_SYSTEM")]
    Reducible,
    #[error("inconsistent constraints: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("group too large to enumerate: order {0}")]
    TooLarge(u64),
}

pub type Result<T> = core::result::Result<T, Error>;
