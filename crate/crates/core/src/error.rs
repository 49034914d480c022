use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent vector has length {found}, ring has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("enumeration of {requested} items exceeds the cap of {cap}")]
    EnumerationCap { requested: u128, cap: u64 },

    #[error("operation is undefined for the zero ideal")]
    ZeroIdeal,

    #[error("ideal is not generated in a single degree (degrees {degrees:?})")]
    NotEquigenerated { degrees: Vec<u32> },

    #[error("parse error on line {line} at `{token}`: {message}")]
    Parse {
        line: usize,
        token: String,
        message: String,
    },

    #[error("need at least {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::EnumerationCap { .. })
    }
}
