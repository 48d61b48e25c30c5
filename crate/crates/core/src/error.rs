use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("window width {0} out of range (expected 2..=16)")]
    WidthOutOfRange(u32),

    #[error("invalid digit {digit} for digit bound {bound}")]
    InvalidDigit { digit: i32, bound: u32 },

    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),

    #[error("expansion is empty")]
    EmptyExpansion,

    #[error("digit {digit} has no entry in the width-{width} table")]
    DigitOutOfTable { digit: i32, width: u32 },

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("malformed cost profile: {0}")]
    MalformedProfile(String),

    #[error("malformed ratio: {0}")]
    MalformedRatio(String),

    #[error("savings base must be positive")]
    NonPositiveBase,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
