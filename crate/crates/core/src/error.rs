use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight {requested} exceeds truncation weight {max}")]
    Truncation { requested: i64, max: i64 },

    #[error("unsupported root system `{0}`")]
    UnsupportedType(String),

    #[error("({lattice}, order {order}) is not a supported graph automorphism")]
    NotInTable { lattice: String, order: u32 },

    #[error("({0}, {1}) is not an exceptional pair")]
    NotExceptional(String, u32),

    #[error("ring {0} is not a field")]
    NotAField(String),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("reduction mod {p} is not defined for {ring}")]
    BadReduction { ring: String, p: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("non-integral value in {0}")]
    NonIntegral(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index undefined: {0}")]
    IndexUndefined(String),

    #[error("no cocycle correction gives a lift of order {0}")]
    NoLift(u32),

    #[error("{check} failed: {witness}")]
    CheckFailed { check: String, witness: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
